#include "fittsnorm/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "detail/parallel.hpp"
#include "fittsnorm/error.hpp"
#include "fittsnorm/synth.hpp"

namespace fittsnorm {

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::r2: return "r2";
    case Metric::aic: return "aic";
    case Metric::bic: return "bic";
    case Metric::tp_diff: return "tp_diff";
    case Metric::tp_cv: return "tp_cv";
  }
  return "r2";
}

std::optional<Metric> parse_metric(std::string_view text) {
  for (Metric m : kAllMetrics) {
    if (to_string(m) == text) return m;
  }
  return std::nullopt;
}

bool higher_is_better(Metric metric) { return metric == Metric::r2; }

MetricGrid evaluate_metrics(const AnalysisTable& table, std::span<const std::size_t> participants) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  MetricGrid grid;
  for (auto& row : grid) row.fill(nan);
  const std::vector<ModelRow> rows =
      compare_models(table, Scope::mixed, ModelSpec::all(), participants, {.parallel = false});
  for (const ModelRow& r : rows) {
    if (!r.fit) continue;
    auto& g = grid[r.spec.index()];
    g[static_cast<std::size_t>(Metric::r2)] = r.fit->r2;
    g[static_cast<std::size_t>(Metric::aic)] = r.fit->aic;
    g[static_cast<std::size_t>(Metric::bic)] = r.fit->bic;
  }
  for (const ModelSpec& spec : ModelSpec::all()) {
    try {
      std::array<double, 3> tp{};
      for (Bias b : kAllBiases) {
        tp[static_cast<std::size_t>(b)] = tp_mean_of_means(table, spec, b, participants).grand_mean;
      }
      const StabilityReport s = stability(tp[0], tp[1], tp[2]);
      grid[spec.index()][static_cast<std::size_t>(Metric::tp_diff)] = s.tp_diff;
      grid[spec.index()][static_cast<std::size_t>(Metric::tp_cv)] = s.tp_cv;
    } catch (const Error&) {
    }
  }
  return grid;
}

void SimConfig::validate(std::size_t population) const {
  if (iterations == 0) throw ValidationError("iterations must be at least 1");
  if (sizes.empty()) throw ValidationError("at least one sample size is required");
  if (metrics.empty()) throw ValidationError("at least one metric is required");
  for (std::size_t n : sizes) {
    if (n == 0) throw ValidationError("sample size must be positive");
    if (n > population) {
      throw ValidationError("sample size " + std::to_string(n) + " exceeds the population of " +
                            std::to_string(population));
    }
  }
}

double MetricWins::win_probability(std::size_t spec_index, std::size_t iterations) const {
  return iterations == 0 ? 0.0
                         : static_cast<double>(wins.at(spec_index)) / static_cast<double>(iterations);
}

bool operator==(const SimResult& a, const SimResult& b) {
  if (a.iterations != b.iterations || a.population != b.population ||
      a.sizes.size() != b.sizes.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.sizes.size(); ++i) {
    const SizeResult& x = a.sizes[i];
    const SizeResult& y = b.sizes[i];
    if (x.n != y.n || x.valid != y.valid || x.wins.size() != y.wins.size()) return false;
    for (std::size_t s = 0; s < ModelSpec::kCount; ++s) {
      for (std::size_t m = 0; m < kAllMetrics.size(); ++m) {
        const double u = x.mean[s][m];
        const double v = y.mean[s][m];
        if (!(u == v || (std::isnan(u) && std::isnan(v)))) return false;
      }
    }
    for (std::size_t m = 0; m < x.wins.size(); ++m) {
      const MetricWins& p = x.wins[m];
      const MetricWins& q = y.wins[m];
      if (p.metric != q.metric || p.wins != q.wins || p.co_wins != q.co_wins ||
          p.ties != q.ties || p.no_winner != q.no_winner) {
        return false;
      }
    }
  }
  return true;
}

std::uint64_t iteration_seed(std::uint64_t master, std::size_t n, std::size_t iteration) {
  return splitmix64(splitmix64(master ^ splitmix64(n)) + iteration);
}

std::vector<std::size_t> sample_participants(std::size_t population, std::size_t n,
                                             std::uint64_t seed) {
  if (n > population) throw ValidationError("sample larger than population");
  std::vector<std::size_t> idx(population);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  if (n < population) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, population - 1);
      std::swap(idx[i], idx[pick(rng)]);
    }
    idx.resize(n);
  }
  std::sort(idx.begin(), idx.end());
  return idx;
}

SimResult run_simulation(const AnalysisTable& table, const SimConfig& config) {
  const std::size_t population = table.participant_count();
  config.validate(population);
  SimResult result;
  result.iterations = config.iterations;
  result.population = population;

  for (std::size_t n : config.sizes) {
    std::vector<MetricGrid> grids(config.iterations);
    detail::parallel_for(
        config.iterations,
        [&](std::size_t it) {
          const std::vector<std::size_t> subset =
              sample_participants(population, n, iteration_seed(config.seed, n, it));
          grids[it] = evaluate_metrics(table, subset);
        },
        config.max_workers);

    SizeResult sr;
    sr.n = n;
    for (auto& row : sr.mean) row.fill(std::numeric_limits<double>::quiet_NaN());
    for (const MetricGrid& g : grids) {
      for (std::size_t s = 0; s < ModelSpec::kCount; ++s) {
        for (std::size_t m = 0; m < kAllMetrics.size(); ++m) {
          const double x = g[s][m];
          const bool neg_inf = std::isinf(x) && x < 0.0;
          if (!std::isfinite(x) && !neg_inf) continue;
          double& mean = sr.mean[s][m];
          const std::size_t k = ++sr.valid[s][m];
          if (k == 1 || neg_inf) {
            mean = x;
          } else if (!std::isinf(mean)) {
            // running mean, exact when every sample is equal
            mean += (x - mean) / static_cast<double>(k);
          }
        }
      }
    }

    for (Metric metric : config.metrics) {
      MetricWins w;
      w.metric = metric;
      const auto m = static_cast<std::size_t>(metric);
      const bool maximise = higher_is_better(metric);
      for (const MetricGrid& g : grids) {
        std::optional<double> best;
        for (std::size_t s = 0; s < ModelSpec::kCount; ++s) {
          const double v = g[s][m];
          if (std::isnan(v)) continue;
          if (!best || (maximise ? v > *best : v < *best)) best = v;
        }
        if (!best) {
          ++w.no_winner;
          continue;
        }
        std::size_t tied = 0;
        for (std::size_t s = 0; s < ModelSpec::kCount; ++s) {
          if (g[s][m] == *best) {
            if (tied == 0) ++w.wins[s];
            ++w.co_wins[s];
            ++tied;
          }
        }
        if (tied > 1) ++w.ties;
      }
      sr.wins.push_back(w);
    }
    result.sizes.push_back(std::move(sr));
  }
  return result;
}

}  // namespace fittsnorm
