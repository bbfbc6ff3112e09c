#pragma once

#include <string>
#include <vector>

#include "fittsnorm/core.hpp"

namespace fittsnorm {

/// Task-axis definition.
///  - tt: from the previous target center to the current target center.
///  - ct: from the previous successful click to the current target center.
enum class AxisMode { tt, ct };

inline constexpr std::array<AxisMode, 2> kAllAxisModes = {AxisMode::tt, AxisMode::ct};

[[nodiscard]] std::string_view to_string(AxisMode mode);
[[nodiscard]] std::optional<AxisMode> parse_axis_mode(std::string_view text);

/// First-click endpoint expressed in the task-axis frame, +x along the movement.
struct RotatedEndpoint {
  double x = 0.0;  ///< signed along-axis deviation from the target center
  double y = 0.0;  ///< signed orthogonal deviation from the target center
  double trial_amplitude_px = 0.0;  ///< |first click - axis origin|
  double axis_length_px = 0.0;      ///< |target center - axis origin|

  /// Movement length projected on the task axis.
  [[nodiscard]] double projected_amplitude_px() const { return axis_length_px + x; }
};

/// Rotates the first click of `trial` into the task-axis frame.
///
/// The TT origin is `prev_target_center`; the CT origin is `trial.start`.
/// Throws DegenerateError when the origin coincides with the target center.
[[nodiscard]] RotatedEndpoint rotate_trial(const TrialRecord& trial, AxisMode mode,
                                           Point prev_target_center);

struct MeasuredTrial {
  TrialRecord record;
  RotatedEndpoint tt;
  RotatedEndpoint ct;

  [[nodiscard]] const RotatedEndpoint& endpoint(AxisMode mode) const {
    return mode == AxisMode::tt ? tt : ct;
  }
  /// Distance of the first click from the position where the trial started.
  [[nodiscard]] double movement_distance_px() const { return ct.trial_amplitude_px; }

  friend bool operator==(const MeasuredTrial&, const MeasuredTrial&) = default;
};

inline const TrialRecord& record_of(const MeasuredTrial& trial) { return trial.record; }

using MeasuredDataset = Grouped<MeasuredTrial>;

struct MeasureOptions {
  /// Keep trial 1 of each sequence, whose axis origin is the start-target click.
  bool include_first_trial = true;
};

struct MeasureResult {
  MeasuredDataset dataset;
  std::vector<std::string> warnings;
};

/// Rotates every trial under both axis definitions.
///
/// The previous target center of trial k is the target of trial k-1 in the same
/// sequence; trial 1 (or a trial whose predecessor is absent from the log) uses
/// the start click instead. Degenerate trials are dropped with a warning.
[[nodiscard]] MeasureResult measure_dataset(const Dataset& dataset,
                                            const MeasureOptions& options = {});

}  // namespace fittsnorm
