#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "fittsnorm/geometry.hpp"

namespace fittsnorm {

enum class RemovalStage { spatial, iqr, participant };

[[nodiscard]] std::string_view to_string(RemovalStage stage);

struct Removal {
  GroupKey key;
  int sequence_index = 0;
  int trial_index = 0;
  RemovalStage stage = RemovalStage::spatial;
};

struct ScreeningOptions {
  double iqr_multiplier = 3.0;
  /// A participant with this many trial-level removals inside one group is dropped.
  std::size_t participant_outlier_threshold = 22;
  std::size_t min_iqr_group_size = 4;
  std::size_t min_participants_for_fences = 4;
};

struct FilterResult {
  MeasuredDataset dataset;
  std::vector<Removal> removals;
  std::vector<std::string> warnings;
};

/// Drops trials whose first click moved less than A/2 from the trial start.
/// Far clicks are kept.
[[nodiscard]] FilterResult spatial_filter(const MeasuredDataset& dataset);

/// Within each participant x bias x condition group, drops trials whose MT lies
/// strictly outside Q1 - k*IQR .. Q3 + k*IQR. Quartiles are computed once per group.
[[nodiscard]] FilterResult iqr_trial_filter(const MeasuredDataset& dataset,
                                            const ScreeningOptions& options = {});

struct ParticipantFilterResult {
  MeasuredDataset dataset;
  std::vector<std::string> removed_ids;
  std::size_t removed_trials = 0;
  std::vector<std::string> warnings;
};

/// Drops participants whose overall mean MT lies outside the k*IQR fences of
/// all participant means, and participants with `participant_outlier_threshold`
/// or more removals (from `prior_removals`) in any single group.
[[nodiscard]] ParticipantFilterResult participant_filter(const MeasuredDataset& dataset,
                                                         std::span<const Removal> prior_removals,
                                                         const ScreeningOptions& options = {});

struct ParticipantRemovalCounts {
  std::size_t input = 0;
  std::size_t spatial = 0;
  std::size_t iqr = 0;
  bool excluded = false;
};

struct ScreeningReport {
  std::size_t n_input_trials = 0;
  std::size_t n_spatial_removed = 0;
  std::size_t n_iqr_removed = 0;
  std::size_t n_participant_removed = 0;  ///< trials dropped with excluded participants
  std::size_t n_retained = 0;
  std::vector<std::string> removed_participant_ids;
  std::map<std::string, ParticipantRemovalCounts> per_participant;
  std::vector<std::string> warnings;

  [[nodiscard]] double retained_fraction_pct() const;
};

struct ScreeningResult {
  MeasuredDataset dataset;
  ScreeningReport report;
  std::vector<Removal> removals;
};

/// Spatial filter, then per-group IQR filter, then participant filter.
[[nodiscard]] ScreeningResult screen(const MeasuredDataset& dataset,
                                     const ScreeningOptions& options = {});

}  // namespace fittsnorm
