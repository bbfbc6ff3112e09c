#include "fittsnorm/core.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <tuple>

#include "fittsnorm/error.hpp"

namespace fittsnorm {

namespace {

// Coordinates are serialized with six fractional digits, so a hit that sits on
// the target boundary can land a hair outside after a round trip.
constexpr double kHitTolerancePx = 1e-6;

}  // namespace

double Condition::nominal_id() const { return std::log2(amplitude_px / width_px + 1.0); }

void Condition::validate() const {
  if (!(amplitude_px > 0.0) || !std::isfinite(amplitude_px)) {
    throw ValidationError("amplitude must be positive and finite");
  }
  if (!(width_px > 0.0) || !std::isfinite(width_px)) {
    throw ValidationError("width must be positive and finite");
  }
  const double id = nominal_id();
  if (!std::isfinite(id) || !(id > 0.0)) {
    throw ValidationError("nominal index of difficulty is not finite and positive");
  }
}

std::string_view to_string(Bias bias) {
  switch (bias) {
    case Bias::accurate:
      return "accurate";
    case Bias::neutral:
      return "neutral";
    case Bias::fast:
      return "fast";
  }
  return "unknown";
}

std::optional<Bias> parse_bias(std::string_view text) {
  for (Bias b : kAllBiases) {
    if (to_string(b) == text) return b;
  }
  return std::nullopt;
}

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

void TrialRecord::validate() const {
  if (participant_id.empty()) throw ValidationError("missing participant id");
  condition.validate();
  if (trial_index < 1 || trial_index > kMaxTrialsPerSequence) {
    throw ValidationError("trial index " + std::to_string(trial_index) + " outside 1.." +
                          std::to_string(kMaxTrialsPerSequence));
  }
  if (sequence_index < 0) throw ValidationError("negative sequence index");
  for (double v : {start.x, start.y, target.x, target.y}) {
    if (!std::isfinite(v)) throw ValidationError("non-finite start or target coordinate");
  }
  if (clicks.empty()) throw ValidationError("trial has no clicks");
  double prev_t = 0.0;
  for (std::size_t i = 0; i < clicks.size(); ++i) {
    const ClickEvent& c = clicks[i];
    if (!std::isfinite(c.x) || !std::isfinite(c.y) || !std::isfinite(c.t_ms)) {
      throw ValidationError("click " + std::to_string(i) + " has a non-finite field");
    }
    if (c.t_ms < 0.0) throw ValidationError("click " + std::to_string(i) + " has negative time");
    if (c.t_ms < prev_t) {
      throw ValidationError("click times decrease at click " + std::to_string(i));
    }
    prev_t = c.t_ms;
  }
  const double miss = distance(clicks.back().position(), target) - condition.width_px / 2.0;
  if (miss > kHitTolerancePx) {
    throw ValidationError("last click lies outside the target (trial must end on a hit)");
  }
}

std::string describe(const GroupKey& key) {
  std::ostringstream os;
  os << key.participant_id << '/' << to_string(key.bias) << "/A=" << key.condition.amplitude_px
     << ",W=" << key.condition.width_px;
  return os.str();
}

Design design_of(const std::vector<GroupKey>& keys) {
  std::set<double> amplitudes;
  std::set<double> widths;
  std::set<Bias> biases;
  std::set<Condition> conditions;
  for (const GroupKey& k : keys) {
    amplitudes.insert(k.condition.amplitude_px);
    widths.insert(k.condition.width_px);
    biases.insert(k.bias);
    conditions.insert(k.condition);
  }
  return Design{{amplitudes.begin(), amplitudes.end()},
                {widths.begin(), widths.end()},
                {biases.begin(), biases.end()},
                {conditions.begin(), conditions.end()}};
}

Dataset build_dataset(std::span<const TrialRecord> records, const BuildOptions& options) {
  if (records.empty()) throw ValidationError("no trial records");

  using TrialKey = std::tuple<std::string, Bias, int, int>;
  std::set<TrialKey> seen;
  Dataset::GroupMap groups;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const TrialRecord& r = records[i];
    try {
      r.validate();
    } catch (const ValidationError& e) {
      throw ValidationError("record " + std::to_string(i) + ": " + e.what());
    }
    if (options.drop_practice && r.practice) continue;
    TrialKey key{r.participant_id, r.bias, r.sequence_index, r.trial_index};
    if (!seen.insert(key).second) {
      throw ConflictError("record " + std::to_string(i) + ": duplicate trial (participant " +
                          r.participant_id + ", bias " + std::string(to_string(r.bias)) +
                          ", sequence " + std::to_string(r.sequence_index) + ", trial " +
                          std::to_string(r.trial_index) + ")");
    }
    groups[GroupKey{r.participant_id, r.bias, r.condition}].push_back(r);
  }
  if (groups.empty()) throw ValidationError("no non-practice trial records");
  return Dataset(std::move(groups));
}

SequenceSummary summarize_sequence(std::span<const TrialRecord> group) {
  if (group.empty()) throw InsufficientDataError("cannot summarize an empty group");
  double mt_sum = 0.0;
  std::size_t errors = 0;
  for (const TrialRecord& r : group) {
    mt_sum += r.movement_time_s();
    if (r.is_error()) ++errors;
  }
  const auto n = static_cast<double>(group.size());
  return SequenceSummary{mt_sum / n, 100.0 * static_cast<double>(errors) / n, group.size()};
}

}  // namespace fittsnorm
