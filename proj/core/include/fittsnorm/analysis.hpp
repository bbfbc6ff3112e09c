#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fittsnorm/effective.hpp"

namespace fittsnorm {

/// Endpoint spread and mean amplitude of one group under one axis definition.
struct AxisSpread {
  double sigma_x = 0.0;
  double sigma_y = 0.0;
  double sigma_xy = 0.0;
  double a_e = 0.0;
};

/// Everything downstream fits need from one participant x bias x condition group.
struct GroupMetrics {
  std::size_t n = 0;
  double mean_mt_s = 0.0;
  double error_rate_pct = 0.0;
  /// ID in bits per ModelSpec::all() index; empty when W_e is degenerate.
  std::array<std::optional<double>, ModelSpec::kCount> id{};
  std::array<AxisSpread, 2> spread{};  ///< indexed by AxisMode

  [[nodiscard]] const AxisSpread& spread_of(AxisMode mode) const {
    return spread[static_cast<std::size_t>(mode)];
  }
};

struct AnalysisOptions {
  AmplitudeMeasure amplitude_measure = AmplitudeMeasure::euclidean;
  /// Groups with fewer trials are left out of every analysis (with a warning).
  std::size_t min_group_size = 4;
  std::size_t max_workers = 0;  ///< 0 = hardware concurrency
};

/// Per-group metrics for a screened dataset, laid out as participant x bias x condition.
///
/// Participants are indexed in sorted id order; a participant subset is a sorted
/// list of those indices.
class AnalysisTable {
 public:
  AnalysisTable() = default;
  AnalysisTable(std::vector<std::string> participants, std::vector<Condition> conditions,
                std::vector<std::optional<GroupMetrics>> cells, std::vector<std::string> warnings);

  [[nodiscard]] const std::vector<std::string>& participants() const { return participants_; }
  [[nodiscard]] const std::vector<Condition>& conditions() const { return conditions_; }
  [[nodiscard]] std::size_t participant_count() const { return participants_.size(); }
  [[nodiscard]] const std::vector<std::string>& warnings() const { return warnings_; }

  /// 0, 1, ..., participant_count() - 1.
  [[nodiscard]] std::vector<std::size_t> all_participants() const;

  [[nodiscard]] const std::optional<GroupMetrics>& cell(std::size_t participant, Bias bias,
                                                        std::size_t condition) const;

 private:
  std::vector<std::string> participants_;
  std::vector<Condition> conditions_;
  std::vector<std::optional<GroupMetrics>> cells_;
  std::vector<std::string> warnings_;
};

/// Computes per-group MT, ER and the nine IDs. Parallel over groups; the result
/// does not depend on the worker count.
[[nodiscard]] AnalysisTable build_analysis(const MeasuredDataset& dataset,
                                           const AnalysisOptions& options = {});

}  // namespace fittsnorm
