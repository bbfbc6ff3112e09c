#include <algorithm>

#include "doctest.h"
#include "fittsnorm/screening.hpp"
#include "support/fixtures.hpp"

using namespace fittsnorm;

namespace {

MeasuredDataset measured(const std::vector<TrialRecord>& records) {
  return measure_dataset(build_dataset(records)).dataset;
}

std::vector<int> removed_trials(const std::vector<Removal>& removals, RemovalStage stage) {
  std::vector<int> out;
  for (const Removal& r : removals) {
    if (r.stage == stage) out.push_back(r.trial_index);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("spatial rule removes clicks closer than A/2 to the trial start") {
  const Condition c{320, 20};
  std::vector<fx::Deviation> devs(25, {0.0, 0.0});
  devs[6] = {-200.0, 0.0};   // 120 px from the start: removed
  devs[13] = {-161.0, 0.0};  // 159 px: removed
  devs[19] = {150.0, 0.0};   // far overshoot: kept
  const auto seq = fx::sequence("P1", Bias::fast, c, 0, devs, std::vector<double>(25, 500));
  const FilterResult r = spatial_filter(measured(seq));
  CHECK(removed_trials(r.removals, RemovalStage::spatial) == std::vector<int>{7, 14});
  CHECK(r.dataset.trial_count() == 23);
}

TEST_CASE("spatial rule boundary is strict") {
  const Condition c{100, 10};
  auto exact = fx::trial("P1", Bias::fast, c, 0, 2, {0, 0}, {100, 0}, {50, 0}, 300);
  auto inside = fx::trial("P1", Bias::fast, c, 0, 3, {100, 0}, {0, 0}, {50.001, 0}, 300);
  const FilterResult r = spatial_filter(measured({exact, inside}));
  CHECK(removed_trials(r.removals, RemovalStage::spatial) == std::vector<int>{3});
}

TEST_CASE("3 IQR fences remove only values strictly outside") {
  const Condition c{320, 45};
  const std::vector<double> base = {100, 110, 120, 130, 140, 150, 160, 170};
  SUBCASE("value on the upper fence is kept") {
    auto mts = base;
    mts.push_back(280);
    auto seq = fx::sequence("P1", Bias::neutral, c, 0, std::vector<fx::Deviation>(9), mts);
    CHECK(iqr_trial_filter(measured(seq)).removals.empty());
  }
  SUBCASE("value just beyond the fence is removed") {
    auto mts = base;
    mts.push_back(281);
    auto seq = fx::sequence("P1", Bias::neutral, c, 0, std::vector<fx::Deviation>(9), mts);
    const FilterResult r = iqr_trial_filter(measured(seq));
    CHECK(removed_trials(r.removals, RemovalStage::iqr) == std::vector<int>{9});
  }
  SUBCASE("planted outliers among 25 trials") {
    std::vector<double> mts(25, 0);
    for (int i = 0; i < 25; ++i) mts[i] = 480 + (i % 5) * 10;
    mts[3] = 3000;
    mts[21] = 60;
    auto seq = fx::sequence("P1", Bias::neutral, c, 0, std::vector<fx::Deviation>(25), mts);
    const FilterResult r = iqr_trial_filter(measured(seq));
    CHECK(removed_trials(r.removals, RemovalStage::iqr) == std::vector<int>{4, 22});
  }
  SUBCASE("small groups are left alone") {
    auto seq = fx::sequence("P1", Bias::neutral, c, 0, std::vector<fx::Deviation>(3), {100, 110, 5000});
    const FilterResult r = iqr_trial_filter(measured(seq));
    CHECK(r.removals.empty());
    CHECK(r.warnings.size() == 1);
  }
}

TEST_CASE("participant exclusion") {
  std::vector<TrialRecord> records;
  for (int p = 0; p < 6; ++p) {
    auto s = fx::clean_sequence("P" + std::to_string(p), Bias::fast, {320, 45}, 0, 500 + 10 * p);
    records.insert(records.end(), s.begin(), s.end());
  }
  SUBCASE("mean MT beyond the fences") {
    auto slow = fx::clean_sequence("SLOW", Bias::fast, {320, 45}, 0, 5000);
    records.insert(records.end(), slow.begin(), slow.end());
    const ScreeningResult r = screen(measured(records));
    CHECK(r.report.removed_participant_ids == std::vector<std::string>{"SLOW"});
    CHECK(r.report.n_participant_removed == 25);
    CHECK(r.dataset.participants().size() == 6);
  }
  SUBCASE("22 removals in one group exclude, 21 do not") {
    for (int planted : {21, 22}) {
      const std::string pid = "R" + std::to_string(planted);
      std::vector<fx::Deviation> devs(25);
      for (int i = 0; i < planted; ++i) devs[i + 1] = {-200.0, 0.0};
      auto s = fx::sequence(pid, Bias::fast, {320, 45}, 0, devs, std::vector<double>(25, 520));
      records.insert(records.end(), s.begin(), s.end());
    }
    const ScreeningResult r = screen(measured(records));
    CHECK(r.report.removed_participant_ids == std::vector<std::string>{"R22"});
    CHECK(r.report.per_participant.at("R21").spatial == 21);
    CHECK_FALSE(r.report.per_participant.at("R21").excluded);
    CHECK(r.report.per_participant.at("R22").excluded);
    CHECK(r.report.n_spatial_removed == 43);
    CHECK(r.report.n_participant_removed == 3);
  }
}

TEST_CASE("screening report bookkeeping") {
  std::vector<TrialRecord> records;
  for (int p = 0; p < 5; ++p) {
    auto s = fx::clean_sequence("P" + std::to_string(p), Bias::accurate, {500, 100}, 0, 700);
    records.insert(records.end(), s.begin(), s.end());
  }
  records[30].clicks.insert(records[30].clicks.begin(),
                            ClickEvent{records[30].start.x + 1, records[30].start.y, 700});
  records[60].clicks[0].t_ms = 9000;
  const ScreeningResult r = screen(measured(records));
  CHECK(r.report.n_input_trials == 125);
  CHECK(r.report.n_spatial_removed == 1);
  CHECK(r.report.n_iqr_removed == 1);
  CHECK(r.report.n_retained == 123);
  CHECK(r.report.retained_fraction_pct() == doctest::Approx(100.0 * 123 / 125));
  CHECK(r.removals.size() == 2);
  CHECK(r.dataset.trial_count() == 123);
}
