#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fittsnorm/modeling.hpp"

namespace fittsnorm {

struct ThroughputResult {
  ModelSpec spec = ModelSpec::nominal();
  Bias bias = Bias::neutral;
  std::vector<std::pair<std::string, double>> per_participant;  ///< (id, bps)
  double grand_mean = 0.0;  ///< bps
  std::size_t k = 0;        ///< A x W conditions per participant
  std::vector<std::string> warnings;
};

/// (1/k) * sum of ID_i / MT_i over one participant's k conditions.
[[nodiscard]] double participant_throughput(std::span<const double> ids_bits,
                                            std::span<const double> mts_s);

/// Mean-of-means throughput for one bias over `participants` (sorted table indices).
///
/// A participant missing any condition (or its ID) is left out with a warning.
/// Throws InsufficientDataError when nobody remains.
[[nodiscard]] ThroughputResult tp_mean_of_means(const AnalysisTable& table, const ModelSpec& spec,
                                                Bias bias,
                                                std::span<const std::size_t> participants);
[[nodiscard]] ThroughputResult tp_mean_of_means(const AnalysisTable& table, const ModelSpec& spec,
                                                Bias bias);

/// 1/b. Throws UndefinedThroughputError when b <= 0.
[[nodiscard]] double tp_slope_reciprocal(const FitResult& fit);

struct StabilityReport {
  double tp_accurate = 0.0;
  double tp_neutral = 0.0;
  double tp_fast = 0.0;
  double tp_diff = 0.0;  ///< 100 * (max - min) / max
  double tp_cv = 0.0;    ///< 100 * sample SD / mean
};

/// Throws UndefinedThroughputError when any TP is not positive.
[[nodiscard]] StabilityReport stability(double tp_accurate, double tp_neutral, double tp_fast);

}  // namespace fittsnorm
