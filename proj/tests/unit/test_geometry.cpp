#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "fittsnorm/error.hpp"
#include "fittsnorm/geometry.hpp"
#include "support/fixtures.hpp"

using namespace fittsnorm;

namespace {

TrialRecord at(Point start, Point target, Point click, double w = 20) {
  return fx::trial("P1", Bias::neutral, {100, w}, 0, 2, start, target, click, 500);
}

}  // namespace

TEST_CASE("rotation puts the task axis on +x") {
  const auto r = rotate_trial(at({0, 0}, {10, 0}, {11, 2}), AxisMode::tt, {0, 0});
  CHECK(r.x == doctest::Approx(1));
  CHECK(r.y == doctest::Approx(2));
  CHECK(r.axis_length_px == doctest::Approx(10));
  CHECK(r.trial_amplitude_px == doctest::Approx(std::hypot(11, 2)));
  CHECK(r.projected_amplitude_px() == doctest::Approx(11));

  const auto up = rotate_trial(at({0, 0}, {0, 10}, {0, 11}), AxisMode::tt, {0, 0});
  CHECK(up.x == doctest::Approx(1));
  CHECK(up.y == doctest::Approx(0).epsilon(1e-12));
  const auto left = rotate_trial(at({0, 0}, {0, 10}, {-1, 10}), AxisMode::tt, {0, 0});
  CHECK(left.x == doctest::Approx(0).epsilon(1e-12));
  CHECK(left.y == doctest::Approx(1));
}

TEST_CASE("TT uses the previous target centre, CT the previous click") {
  const TrialRecord t = at({0, 5}, {100, 0}, {103, 0});
  const auto tt = rotate_trial(t, AxisMode::tt, {0, 0});
  const auto ct = rotate_trial(t, AxisMode::ct, {0, 0});
  CHECK(tt.x == doctest::Approx(3));
  CHECK(tt.y == doctest::Approx(0).epsilon(1e-12));
  CHECK(ct.axis_length_px == doctest::Approx(std::hypot(100, 5)));
  CHECK(ct.trial_amplitude_px == doctest::Approx(std::hypot(103, 5)));
  CHECK(ct.y != doctest::Approx(0));
}

TEST_CASE("zero-length axis is degenerate") {
  CHECK_THROWS_AS((void)rotate_trial(at({100, 0}, {100, 0}, {101, 0}), AxisMode::ct, {0, 0}),
                  DegenerateError);
  CHECK_THROWS_AS((void)rotate_trial(at({0, 0}, {100, 0}, {101, 0}), AxisMode::tt, {100, 0}),
                  DegenerateError);
}

TEST_CASE("rotated endpoints are invariant to rigid motions of the scene") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-500, 500);
  std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
  for (int rep = 0; rep < 200; ++rep) {
    const Point prev{u(rng), u(rng)};
    const Point start{prev.x + u(rng) / 50, prev.y + u(rng) / 50};
    const Point target{u(rng), u(rng)};
    const Point click{target.x + u(rng) / 50, target.y + u(rng) / 50};
    const double a = ang(rng);
    const Point shift{u(rng), u(rng)};
    auto move = [&](Point p) {
      return Point{p.x * std::cos(a) - p.y * std::sin(a) + shift.x,
                   p.x * std::sin(a) + p.y * std::cos(a) + shift.y};
    };
    TrialRecord t = at(start, target, click, 2000);
    TrialRecord m = at(move(start), move(target), move(click), 2000);
    for (AxisMode mode : kAllAxisModes) {
      const auto r1 = rotate_trial(t, mode, prev);
      const auto r2 = rotate_trial(m, mode, move(prev));
      CHECK(r1.x == doctest::Approx(r2.x).epsilon(1e-9));
      CHECK(r1.y == doctest::Approx(r2.y).epsilon(1e-9));
      CHECK(r1.trial_amplitude_px == doctest::Approx(r2.trial_amplitude_px).epsilon(1e-9));
    }
  }
}

TEST_CASE("measure_dataset origins") {
  const Condition c{320, 20};
  std::vector<fx::Deviation> devs(25, {2.0, -1.0});
  auto seq = fx::sequence("P1", Bias::fast, c, 0, devs, std::vector<double>(25, 500));
  const Dataset ds = build_dataset(seq);

  const MeasureResult all = measure_dataset(ds);
  const auto& trials = all.dataset.groups().begin()->second;
  REQUIRE(trials.size() == 25);
  for (const MeasuredTrial& t : trials) {
    CHECK(t.tt.x == doctest::Approx(2.0));
    CHECK(t.tt.y == doctest::Approx(-1.0));
    CHECK(t.tt.axis_length_px == doctest::Approx(320).epsilon(0.01));
  }
  // Trial 1 starts from the start-target click, which is target 0's centre.
  CHECK(trials[0].tt.x == doctest::Approx(trials[0].ct.x));

  const MeasureResult dropped = measure_dataset(ds, {.include_first_trial = false});
  CHECK(dropped.dataset.trial_count() == 24);

  // Without trial 5, trial 6 falls back to its start click.
  seq.erase(seq.begin() + 4);
  const MeasureResult gap = measure_dataset(build_dataset(seq));
  const auto& g = gap.dataset.groups().begin()->second;
  CHECK(g[4].record.trial_index == 6);
  CHECK(g[4].tt.x == doctest::Approx(g[4].ct.x));
  CHECK(g[4].tt.y == doctest::Approx(g[4].ct.y));
}

TEST_CASE("degenerate trials are dropped with a warning") {
  auto seq = fx::clean_sequence("P1", Bias::fast, {320, 20}, 0, 500, 5);
  seq[2].start = seq[2].target;
  seq[2].clicks = {{seq[2].target.x + 1, seq[2].target.y, 400}};
  const MeasureResult m = measure_dataset(build_dataset(seq));
  CHECK(m.dataset.trial_count() == 4);
  CHECK(m.warnings.size() == 1);
}

TEST_CASE("axis mode parsing") {
  CHECK(parse_axis_mode("tt") == AxisMode::tt);
  CHECK(parse_axis_mode("CT") == AxisMode::ct);
  CHECK_FALSE(parse_axis_mode("xy").has_value());
}
