#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fittsnorm/throughput.hpp"

namespace fittsnorm {

enum class Metric { r2, aic, bic, tp_diff, tp_cv };

inline constexpr std::array<Metric, 5> kAllMetrics = {Metric::r2, Metric::aic, Metric::bic,
                                                      Metric::tp_diff, Metric::tp_cv};

[[nodiscard]] std::string_view to_string(Metric metric);
[[nodiscard]] std::optional<Metric> parse_metric(std::string_view text);
/// r2 is maximised; every other metric is minimised.
[[nodiscard]] bool higher_is_better(Metric metric);

/// Metric values per spec (ModelSpec::all() order) and metric (kAllMetrics order).
/// A value is NaN when its fit or throughput could not be computed.
using MetricGrid = std::array<std::array<double, kAllMetrics.size()>, ModelSpec::kCount>;

/// Mixed-scope fits and per-bias throughput stability for every spec over a
/// participant subset (sorted table indices).
[[nodiscard]] MetricGrid evaluate_metrics(const AnalysisTable& table,
                                          std::span<const std::size_t> participants);

struct SimConfig {
  std::vector<std::size_t> sizes{5, 10, 20, 40, 80, 160};
  std::size_t iterations = 1000;
  std::uint64_t seed = 42;
  std::vector<Metric> metrics{kAllMetrics.begin(), kAllMetrics.end()};
  std::size_t max_workers = 0;

  /// Throws ValidationError when a size exceeds the population or iterations is 0.
  void validate(std::size_t population) const;
};

using SpecCounts = std::array<std::size_t, ModelSpec::kCount>;

struct MetricWins {
  Metric metric = Metric::r2;
  /// One win per iteration, to the lowest-index spec among those tied for best.
  SpecCounts wins{};
  /// One win to every spec tied for best.
  SpecCounts co_wins{};
  std::size_t ties = 0;        ///< iterations with more than one best spec
  std::size_t no_winner = 0;   ///< iterations where no spec had a value

  [[nodiscard]] double win_probability(std::size_t spec_index, std::size_t iterations) const;
};

struct SizeResult {
  std::size_t n = 0;
  MetricGrid mean{};  ///< mean over iterations with a finite value
  std::array<std::array<std::size_t, kAllMetrics.size()>, ModelSpec::kCount> valid{};
  std::vector<MetricWins> wins;  ///< one entry per configured metric
};

struct SimResult {
  std::size_t iterations = 0;
  std::size_t population = 0;
  std::vector<SizeResult> sizes;

  friend bool operator==(const SimResult&, const SimResult&);
};

/// Seed of the sampling stream for one (size, iteration) pair.
[[nodiscard]] std::uint64_t iteration_seed(std::uint64_t master, std::size_t n, std::size_t iteration);

/// Sorted sample of `n` distinct indices from 0..population-1.
[[nodiscard]] std::vector<std::size_t> sample_participants(std::size_t population, std::size_t n,
                                                           std::uint64_t seed);

/// Repeatedly samples participants from an already-screened table and tallies
/// which spec wins each metric. Deterministic for a given config.
[[nodiscard]] SimResult run_simulation(const AnalysisTable& table, const SimConfig& config);

}  // namespace fittsnorm
