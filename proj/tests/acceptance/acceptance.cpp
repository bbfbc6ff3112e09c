// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fittsnorm/analysis.hpp"
#include "fittsnorm/descriptive.hpp"
#include "fittsnorm/log_format.hpp"
#include "fittsnorm/modeling.hpp"
#include "fittsnorm/normality.hpp"
#include "fittsnorm/screening.hpp"
#include "fittsnorm/simulation.hpp"
#include "fittsnorm/synth.hpp"
#include "fittsnorm/throughput.hpp"
#include "support/fixtures.hpp"
#include "support/normality_fixtures.hpp"

using namespace fittsnorm;

namespace {

int g_failures = 0;

struct Verdict {
  bool ok = true;
  std::string detail;
};

void criterion(const std::string& name, const std::function<Verdict()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!v.ok) ++g_failures;
  std::printf("%s  %-34s %s (%.2fs)\n", v.ok ? "PASS" : "FAIL", name.c_str(), v.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

MeasuredDataset measured(const std::vector<TrialRecord>& records) {
  return measure_dataset(build_dataset(records)).dataset;
}

std::vector<int> removed(const std::vector<Removal>& removals, RemovalStage stage) {
  std::vector<int> out;
  for (const Removal& r : removals) {
    if (r.stage == stage) out.push_back(r.trial_index);
  }
  std::sort(out.begin(), out.end());
  return out;
}

constexpr std::size_t kPopulation = 342;
constexpr std::uint64_t kSeeds[] = {1, 2, 3, 4, 5};

struct SeedRun {
  std::uint64_t seed = 0;
  std::vector<TrialRecord> records;
  AnalysisTable table;
};

const std::vector<SeedRun>& seed_runs() {
  static const std::vector<SeedRun> runs = [] {
    std::vector<SeedRun> out;
    for (std::uint64_t seed : kSeeds) {
      SeedRun r;
      r.seed = seed;
      r.records = generate_population(AgentProfile::calibrated(), kPopulation, ExperimentDesign::standard(), seed);
      r.table = build_analysis(screen(measured(r.records)).dataset);
      out.push_back(std::move(r));
    }
    return out;
  }();
  return runs;
}

void nominal_ids() {
  criterion("nominal-id", [] {
    const double a = Condition{320, 100}.nominal_id();
    const double b = Condition{500, 20}.nominal_id();
    const double c = Condition{460, 50}.nominal_id();
    const bool ok = std::abs(a - 2.07) <= 0.005 && std::abs(b - 4.70) <= 0.005 && std::abs(c - 3.35) <= 0.005;
    return Verdict{ok, fmt("(320,100)=%.4f (500,20)=%.4f (460,50)=%.4f", a, b, c)};
  });
}

void four_point_fixture() {
  criterion("four-point-spread", [] {
    std::vector<RotatedEndpoint> along, across;
    for (double d : {-2.0, -1.0, 1.0, 2.0}) {
      along.push_back({d, 0, 300, 300});
      across.push_back({0, d, 300, 300});
    }
    const double sx_along = compute_sigma(along, SigmaMode::univariate);
    const double sx_across = compute_sigma(across, SigmaMode::univariate);
    const double sxy_across = compute_sigma(across, SigmaMode::bivariate);
    const bool ok = std::abs(sx_along - 1.826) <= 0.005 && std::abs(sx_across) <= 0.005 &&
                    std::abs(sxy_across - 1.826) <= 0.005;
    return Verdict{ok, fmt("along sx=%.4f; across sx=%.4f sxy=%.4f", sx_along, sx_across, sxy_across)};
  });
}

void norm_identity() {
  criterion("norm-identity", [] {
    std::mt19937_64 rng(2718);
    std::uniform_int_distribution<int> size(3, 60);
    std::uniform_real_distribution<double> scale(0.1, 50);
    double worst = 0;
    const ModelSpec spec = ModelSpec::effective(SigmaMode::bivariate, AxisMode::tt, AmplitudeMode::nominal);
    for (int set = 0; set < 1000; ++set) {
      std::normal_distribution<double> gx(scale(rng), scale(rng)), gy(-scale(rng), scale(rng));
      std::vector<RotatedEndpoint> eps(static_cast<std::size_t>(size(rng)));
      for (auto& e : eps) e = {gx(rng), gy(rng), 300, 300};
      const EffectiveStats s = compute_effective(eps, spec);
      worst = std::max(worst, std::abs(s.sigma_xy - std::hypot(s.sigma_x, s.sigma_y)));
    }
    return Verdict{worst < 1e-9, fmt("max |sxy - sqrt(sx^2+sy^2)| = %.3g over 1000 sets", worst)};
  });
}

void coverage() {
  criterion("effective-width-coverage", [] {
    std::mt19937_64 rng(4133);
    std::normal_distribution<double> g(0, 7.5);
    std::vector<RotatedEndpoint> eps(100000);
    for (auto& e : eps) e = {g(rng), 0, 400, 400};
    const EffectiveStats s =
        compute_effective(eps, ModelSpec::effective(SigmaMode::univariate, AxisMode::tt, AmplitudeMode::nominal));
    double mean = 0;
    for (const auto& e : eps) mean += e.x;
    mean /= static_cast<double>(eps.size());
    std::size_t outside = 0;
    for (const auto& e : eps) outside += std::abs(e.x - mean) > s.w_e / 2 ? 1 : 0;
    const double pct = 100.0 * static_cast<double>(outside) / static_cast<double>(eps.size());
    return Verdict{pct >= 3.4 && pct <= 4.4, fmt("%.3f%% outside We (want 3.4..4.4)", pct)};
  });
}

void screening_fixtures() {
  criterion("screening-spatial", [] {
    std::vector<fx::Deviation> devs(25);
    devs[6] = {-200, 0};
    devs[13] = {-161, 0};
    devs[19] = {150, 0};
    const auto seq = fx::sequence("P1", Bias::fast, {320, 20}, 0, devs, std::vector<double>(25, 500));
    const FilterResult r = spatial_filter(measured(seq));
    const auto got = removed(r.removals, RemovalStage::spatial);
    return Verdict{got == std::vector<int>{7, 14}, fmt("removed %zu planted short clicks of 2", got.size())};
  });

  criterion("screening-iqr", [] {
    // 23 ordinary trials spread over 500..520 ms, plus two planted slow ones.
    std::vector<double> mts;
    for (int i = 0; i < 25; ++i) mts.push_back(500 + 5.0 * (i % 5));
    mts[4] = 3000;
    mts[16] = 760;
    std::vector<double> sorted = mts;
    std::sort(sorted.begin(), sorted.end());
    const double q1 = quantile_linear(sorted, 0.25), q3 = quantile_linear(sorted, 0.75);
    const auto seq = fx::sequence("P1", Bias::neutral, {500, 45}, 0, std::vector<fx::Deviation>(25), mts);
    const FilterResult r = iqr_trial_filter(measured(seq));
    const auto got = removed(r.removals, RemovalStage::iqr);
    std::string list;
    for (int t : got) list += std::to_string(t) + " ";
    return Verdict{got == std::vector<int>{5, 17},
                   fmt("fences %.1f..%.1f ms; removed trials %s(want 5 17)", q1 - 3 * (q3 - q1),
                       q3 + 3 * (q3 - q1), list.c_str())};
  });

  criterion("screening-participant", [] {
    std::vector<TrialRecord> records;
    for (int p = 0; p < 6; ++p) {
      auto s = fx::clean_sequence("P" + std::to_string(p), Bias::fast, {320, 45}, 0, 500 + 10 * p);
      records.insert(records.end(), s.begin(), s.end());
    }
    for (int planted : {21, 22}) {
      std::vector<fx::Deviation> devs(25);
      for (int i = 0; i < planted; ++i) devs[static_cast<std::size_t>(i) + 1] = {-200, 0};
      auto s = fx::sequence("R" + std::to_string(planted), Bias::fast, {320, 45}, 0, devs,
                            std::vector<double>(25, 520));
      records.insert(records.end(), s.begin(), s.end());
    }
    auto slow = fx::clean_sequence("SLOW", Bias::fast, {320, 45}, 0, 5000);
    records.insert(records.end(), slow.begin(), slow.end());
    const ScreeningResult r = screen(measured(records));
    std::vector<std::string> ids = r.report.removed_participant_ids;
    std::sort(ids.begin(), ids.end());
    const bool ok = ids == std::vector<std::string>{"R22", "SLOW"};
    std::string list;
    for (const auto& id : ids) list += id + " ";
    return Verdict{ok, "excluded: " + list + "(want R22 SLOW)"};
  });
}

void ols() {
  criterion("ols", [] {
    const std::vector<double> x = {1, 2, 3, 4, 5};
    std::vector<double> y;
    for (double v : x) y.push_back(0.2 + 0.3 * v);
    const FitResult exact = ols_fit(x, y);

    // x = (0,1,2), y = (1,3,2): b = 0.5, a = 1.5, RSS = 1.5, TSS = 2
    const FitResult three = ols_fit(std::vector<double>{0, 1, 2}, std::vector<double>{1, 3, 2});
    const bool closed = std::abs(three.a - 1.5) < 1e-9 && std::abs(three.b - 0.5) < 1e-9 &&
                        std::abs(three.r2 - 0.25) < 1e-9;

    // Deltas must not depend on the additive constant dropped from the likelihood.
    const std::vector<double> xs = {1, 2, 3, 4, 5, 6};
    const std::vector<double> y1 = {1.1, 1.9, 3.2, 3.9, 5.1, 6.0};
    const std::vector<double> y2 = {1.3, 1.7, 3.5, 3.6, 5.4, 5.8};
    const FitResult f1 = ols_fit(xs, y1), f2 = ols_fit(xs, y2);
    const double n = 6, k = 3;
    auto full_aic = [&](const FitResult& f) {
      return n * (std::log(2 * std::numbers::pi) + std::log(f.rss / n) + 1) + 2 * k;
    };
    const double invariance = std::abs((f1.aic - f2.aic) - (full_aic(f1) - full_aic(f2)));
    const bool ok = std::abs(exact.r2 - 1.0) < 1e-12 && closed && invariance < 1e-9;
    return Verdict{ok, fmt("exact r2=%.12f; 3-pt a=%.9f b=%.9f r2=%.9f; dAIC drift %.2g", exact.r2, three.a,
                           three.b, three.r2, invariance)};
  });
}

struct SpecSummary {
  std::array<double, ModelSpec::kCount> r2{};
  std::array<double, ModelSpec::kCount> tp_diff{};
  std::array<double, ModelSpec::kCount> tp_cv{};
};

SpecSummary summarize(const AnalysisTable& t) {
  SpecSummary s;
  for (const ModelRow& row : compare_models(t, Scope::mixed)) {
    s.r2[row.spec.index()] = row.fit ? row.fit->r2 : std::nan("");
  }
  for (const ModelSpec& spec : ModelSpec::all()) {
    const StabilityReport st = stability(tp_mean_of_means(t, spec, Bias::accurate).grand_mean,
                                         tp_mean_of_means(t, spec, Bias::neutral).grand_mean,
                                         tp_mean_of_means(t, spec, Bias::fast).grand_mean);
    s.tp_diff[spec.index()] = st.tp_diff;
    s.tp_cv[spec.index()] = st.tp_cv;
  }
  return s;
}

void end_to_end() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<SpecSummary> sums;
  for (const SeedRun& r : seed_runs()) sums.push_back(summarize(r.table));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const std::size_t x_tt = ModelSpec::effective(SigmaMode::univariate, AxisMode::tt, AmplitudeMode::nominal).index();
  const std::size_t x_tt_ae =
      ModelSpec::effective(SigmaMode::univariate, AxisMode::tt, AmplitudeMode::effective).index();

  criterion("synthetic-effective-beats-nominal", [&] {
    std::size_t good = 0;
    double margin = 1;
    for (const auto& s : sums) {
      bool all = true;
      for (std::size_t i = 1; i < ModelSpec::kCount; ++i) {
        all = all && s.r2[i] > s.r2[0];
        margin = std::min(margin, s.r2[i] - s.r2[0]);
      }
      good += all ? 1 : 0;
    }
    return Verdict{good == sums.size(), fmt("%zu/%zu seeds; smallest r2 margin %.5f", good, sums.size(), margin)};
  });

  criterion("synthetic-univariate-tt-best-r2", [&] {
    std::size_t good = 0;
    for (const auto& s : sums) {
      good += std::max_element(s.r2.begin(), s.r2.end()) - s.r2.begin() == static_cast<long>(x_tt) ? 1 : 0;
    }
    return Verdict{good == sums.size(), fmt("%zu/%zu seeds", good, sums.size())};
  });

  criterion("synthetic-univariate-tt-ae-lowest-cv", [&] {
    std::size_t good = 0;
    for (const auto& s : sums) {
      good += std::min_element(s.tp_cv.begin(), s.tp_cv.end()) - s.tp_cv.begin() == static_cast<long>(x_tt_ae) ? 1 : 0;
    }
    return Verdict{good == sums.size(), fmt("%zu/%zu seeds; seed-1 cv %.3f%% vs nominal %.3f%%", good, sums.size(),
                                            sums[0].tp_cv[x_tt_ae], sums[0].tp_cv[0])};
  });

  criterion("synthetic-tp-diff", [&] {
    std::size_t good = 0;
    double worst_ae = 0, best_nom = 1e9;
    for (const auto& s : sums) {
      good += s.tp_diff[x_tt_ae] < 6.0 && s.tp_diff[0] > 6.0 ? 1 : 0;
      worst_ae = std::max(worst_ae, s.tp_diff[x_tt_ae]);
      best_nom = std::min(best_nom, s.tp_diff[0]);
    }
    return Verdict{good == sums.size() && secs < 60,
                   fmt("%zu/%zu seeds; x-tt-ae max %.3f%% < 6 < nominal min %.3f%%; %.1fs for 5x342 agents", good,
                       sums.size(), worst_ae, best_nom, secs)};
  });
}

void simulation() {
  const AnalysisTable& t = seed_runs().front().table;

  criterion("simulation-full-population", [&] {
    SimConfig c;
    c.sizes = {t.participant_count()};
    c.iterations = 2;
    const SimResult r = run_simulation(t, c);
    const SpecSummary direct = summarize(t);
    bool ok = true;
    for (std::size_t s = 0; s < ModelSpec::kCount; ++s) {
      ok = ok && same_bits(r.sizes[0].mean[s][0], direct.r2[s]) &&
           same_bits(r.sizes[0].mean[s][3], direct.tp_diff[s]) && same_bits(r.sizes[0].mean[s][4], direct.tp_cv[s]);
    }
    return Verdict{ok, fmt("N=%zu sample vs full analysis, all 9 specs", t.participant_count())};
  });

  SimConfig c;
  c.sizes = {5, 10, 20, 40, 80, 160};
  c.iterations = 200;
  c.seed = 42;
  const auto t0 = std::chrono::steady_clock::now();
  const SimResult r = run_simulation(t, c);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  criterion("simulation-win-sums", [&] {
    bool ok = true;
    for (const SizeResult& s : r.sizes) {
      for (const MetricWins& w : s.wins) {
        std::size_t total = w.no_winner;
        for (std::size_t v : w.wins) total += v;
        ok = ok && total == c.iterations;
      }
    }
    return Verdict{ok, fmt("6 sizes x 5 metrics sum to %zu", c.iterations)};
  });

  criterion("simulation-deterministic", [&] {
    SimConfig small = c;
    small.iterations = 40;
    const bool ok = run_simulation(t, small) == run_simulation(t, small);
    return Verdict{ok, "two runs with seed 42 compare equal"};
  });

  criterion("simulation-bivariate-share-trend", [&] {
    std::vector<double> share;
    std::string text;
    for (const SizeResult& s : r.sizes) {
      std::size_t biv = 0;
      for (const ModelSpec& spec : ModelSpec::all()) {
        if (spec.is_bivariate()) biv += s.wins[0].wins[spec.index()];
      }
      share.push_back(static_cast<double>(biv) / static_cast<double>(c.iterations));
      text += fmt("N=%zu:%.3f ", s.n, share.back());
    }
    bool ok = true;
    for (std::size_t i = 3; i < share.size(); ++i) ok = ok && share[i] <= share[i - 1];
    return Verdict{ok && secs < 600, text + fmt("(%.1fs)", secs)};
  });
}

void normality() {
  criterion("normality-oracles", [] {
    double worst = 0;
    for (const fx::SwCase& c : fx::sw_cases()) {
      const NormalityResult r = shapiro_wilk(c.xs);
      worst = std::max({worst, std::abs(r.statistic - c.w), std::abs(r.p_value - c.p)});
    }
    const NormalityResult a = henze_zirkler(fx::kHzTwenty);
    const NormalityResult b = henze_zirkler(fx::kHzSkewed);
    worst = std::max({worst, std::abs(a.statistic - fx::kHzTwentyStatistic), std::abs(a.p_value - fx::kHzTwentyP),
                      std::abs(b.statistic - fx::kHzSkewedStatistic), std::abs(b.p_value - fx::kHzSkewedP)});
    return Verdict{worst < 1e-4, fmt("max deviation %.2g over %zu fixtures", worst, fx::sw_cases().size() + 2)};
  });

  criterion("normality-false-rejection", [] {
    std::mt19937_64 rng(500);
    std::normal_distribution<double> g(0, 1);
    int sw_reject = 0, hz_reject = 0;
    for (int group = 0; group < 500; ++group) {
      std::vector<double> xs(25);
      std::vector<Point> pts(25);
      for (double& v : xs) v = g(rng);
      for (Point& p : pts) p = {g(rng), g(rng)};
      sw_reject += shapiro_wilk(xs).passed ? 0 : 1;
      hz_reject += henze_zirkler(pts).passed ? 0 : 1;
    }
    const double sw = sw_reject / 5.0, hz = hz_reject / 5.0;
    const bool ok = std::abs(sw - 5.0) <= 2.0 && std::abs(hz - 5.0) <= 2.0;
    return Verdict{ok, fmt("500 groups of 25: SW %.1f%%, HZ %.1f%% (want 5 +- 2)", sw, hz)};
  });
}

void log_round_trip() {
  criterion("log-round-trip", [] {
    std::size_t lines = 0;
    bool ok = true;
    for (const SeedRun& r : seed_runs()) {
      std::ostringstream first;
      write_log(first, r.records);
      std::istringstream in(first.str());
      const ParseResult parsed = parse_log(in, {.strict = true});
      std::ostringstream second;
      write_log(second, parsed.records);
      ok = ok && parsed.records == r.records && second.str() == first.str();
      lines += parsed.records.size();
    }
    return Verdict{ok, fmt("%zu records over 5 populations byte-identical", lines)};
  });
}

}  // namespace

int main() {
  nominal_ids();
  four_point_fixture();
  norm_identity();
  coverage();
  screening_fixtures();
  ols();
  normality();
  end_to_end();
  simulation();
  log_round_trip();
  std::printf("%s: %d failure(s)\n", g_failures == 0 ? "ALL PASS" : "FAILED", g_failures);
  return g_failures == 0 ? 0 : 1;
}
