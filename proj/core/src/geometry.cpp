#include "fittsnorm/geometry.hpp"

#include <cmath>
#include <map>

#include "fittsnorm/error.hpp"

namespace fittsnorm {

namespace {

constexpr double kMinAxisLengthPx = 1e-9;

std::string trial_label(const TrialRecord& t) {
  return t.participant_id + "/" + std::string(to_string(t.bias)) + "/seq " +
         std::to_string(t.sequence_index) + "/trial " + std::to_string(t.trial_index);
}

}  // namespace

std::string_view to_string(AxisMode mode) { return mode == AxisMode::tt ? "tt" : "ct"; }

std::optional<AxisMode> parse_axis_mode(std::string_view text) {
  if (text == "tt" || text == "TT") return AxisMode::tt;
  if (text == "ct" || text == "CT") return AxisMode::ct;
  return std::nullopt;
}

RotatedEndpoint rotate_trial(const TrialRecord& trial, AxisMode mode, Point prev_target_center) {
  const Point origin = mode == AxisMode::tt ? prev_target_center : trial.start;
  const double ax = trial.target.x - origin.x;
  const double ay = trial.target.y - origin.y;
  const double axis_length = std::hypot(ax, ay);
  if (!(axis_length > kMinAxisLengthPx)) {
    throw DegenerateError("zero-length " + std::string(to_string(mode)) + " task axis in " +
                          trial_label(trial));
  }
  const double theta = std::atan2(ay, ax);
  const double c = std::cos(theta);
  const double s = std::sin(theta);

  const Point click = trial.first_click();
  const double dx = click.x - trial.target.x;
  const double dy = click.y - trial.target.y;

  RotatedEndpoint out;
  out.x = dx * c + dy * s;
  out.y = -dx * s + dy * c;
  out.trial_amplitude_px = distance(click, origin);
  out.axis_length_px = axis_length;
  return out;
}

MeasureResult measure_dataset(const Dataset& dataset, const MeasureOptions& options) {
  MeasureResult result;
  MeasuredDataset::GroupMap groups;
  for (const auto& [key, trials] : dataset.groups()) {
    std::map<std::pair<int, int>, Point> targets;
    for (const TrialRecord& t : trials) targets[{t.sequence_index, t.trial_index}] = t.target;

    std::vector<MeasuredTrial> measured;
    measured.reserve(trials.size());
    for (const TrialRecord& t : trials) {
      if (!options.include_first_trial && t.trial_index == 1) continue;
      Point prev = t.start;
      if (t.trial_index > 1) {
        if (auto it = targets.find({t.sequence_index, t.trial_index - 1}); it != targets.end()) {
          prev = it->second;
        }
      }
      try {
        measured.push_back(
            MeasuredTrial{t, rotate_trial(t, AxisMode::tt, prev), rotate_trial(t, AxisMode::ct, prev)});
      } catch (const DegenerateError& e) {
        result.warnings.push_back(std::string("dropped trial: ") + e.what());
      }
    }
    if (!measured.empty()) groups.emplace(key, std::move(measured));
  }
  result.dataset = MeasuredDataset(std::move(groups));
  return result;
}

}  // namespace fittsnorm
