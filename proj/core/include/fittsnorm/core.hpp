#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fittsnorm {

/// Target condition: movement amplitude A and target width W, both in pixels.
struct Condition {
  double amplitude_px = 0.0;
  double width_px = 0.0;

  /// Nominal index of difficulty, log2(A/W + 1), in bits.
  [[nodiscard]] double nominal_id() const;
  /// Throws ValidationError unless A > 0, W > 0 and the nominal ID is finite and positive.
  void validate() const;

  friend auto operator<=>(const Condition&, const Condition&) = default;
};

/// Instructed speed-accuracy bias.
enum class Bias { accurate, neutral, fast };

inline constexpr std::array<Bias, 3> kAllBiases = {Bias::accurate, Bias::neutral, Bias::fast};

[[nodiscard]] std::string_view to_string(Bias bias);
[[nodiscard]] std::optional<Bias> parse_bias(std::string_view text);

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

[[nodiscard]] double distance(Point a, Point b);

struct ClickEvent {
  double x = 0.0;
  double y = 0.0;
  double t_ms = 0.0;  ///< ms since trial start

  [[nodiscard]] Point position() const { return {x, y}; }
  friend bool operator==(const ClickEvent&, const ClickEvent&) = default;
};

inline constexpr int kMaxTrialsPerSequence = 25;

/// One pointing trial as logged: geometry, every click, timing.
///
/// The trial completes only on a hit, so the last click lies inside the target.
/// Movement time and endpoint come from the first click regardless of hit or miss.
struct TrialRecord {
  std::string participant_id;
  std::string device;
  Bias bias = Bias::neutral;
  Condition condition;
  int sequence_index = 0;
  int trial_index = 1;
  Point start;   ///< successful click that began this trial
  Point target;  ///< current target center
  std::vector<ClickEvent> clicks;
  bool practice = false;
  /// Keys the log format does not know about, kept as (key, raw JSON value).
  std::vector<std::pair<std::string, std::string>> extra_fields;

  [[nodiscard]] double movement_time_ms() const { return clicks.front().t_ms; }
  [[nodiscard]] double movement_time_s() const { return clicks.front().t_ms / 1000.0; }
  [[nodiscard]] bool is_error() const { return clicks.size() > 1; }
  [[nodiscard]] Point first_click() const { return clicks.front().position(); }

  /// Throws ValidationError describing the first violated invariant.
  void validate() const;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

/// Grouping key for analysis: participant x bias x condition.
struct GroupKey {
  std::string participant_id;
  Bias bias = Bias::neutral;
  Condition condition;

  friend auto operator<=>(const GroupKey&, const GroupKey&) = default;
  friend bool operator==(const GroupKey&, const GroupKey&) = default;
};

[[nodiscard]] std::string describe(const GroupKey& key);

/// Experiment design levels present in a dataset.
struct Design {
  std::vector<double> amplitudes;
  std::vector<double> widths;
  std::vector<Bias> biases;
  std::vector<Condition> conditions;  ///< sorted by (A, W)

  friend bool operator==(const Design&, const Design&) = default;
};

/// Trials grouped by participant x bias x condition, ordered by (sequence, trial)
/// inside each group. Immutable once built.
template <typename Trial>
class Grouped {
 public:
  using GroupMap = std::map<GroupKey, std::vector<Trial>>;

  Grouped() = default;
  explicit Grouped(GroupMap groups);

  [[nodiscard]] const GroupMap& groups() const { return groups_; }
  [[nodiscard]] const Design& design() const { return design_; }
  [[nodiscard]] std::size_t trial_count() const;
  [[nodiscard]] std::size_t group_count() const { return groups_.size(); }
  /// Sorted, unique participant ids.
  [[nodiscard]] std::vector<std::string> participants() const;

  friend bool operator==(const Grouped&, const Grouped&) = default;

 private:
  GroupMap groups_;
  Design design_;
};

using Dataset = Grouped<TrialRecord>;

struct BuildOptions {
  bool drop_practice = true;
};

/// Validates and groups raw records. Input order does not affect the result.
///
/// Throws ValidationError (empty input, or a malformed record, naming its index)
/// and ConflictError on a duplicate (participant, bias, sequence, trial) key.
[[nodiscard]] Dataset build_dataset(std::span<const TrialRecord> records,
                                    const BuildOptions& options = {});

struct SequenceSummary {
  double mean_mt_s = 0.0;
  double error_rate_pct = 0.0;
  std::size_t n_trials = 0;
};

/// Mean first-click time and percentage of trials needing more than one click.
[[nodiscard]] SequenceSummary summarize_sequence(std::span<const TrialRecord> group);

inline const TrialRecord& record_of(const TrialRecord& trial) { return trial; }

[[nodiscard]] Design design_of(const std::vector<GroupKey>& keys);

template <typename Trial>
Grouped<Trial>::Grouped(GroupMap groups) : groups_(std::move(groups)) {
  std::vector<GroupKey> keys;
  keys.reserve(groups_.size());
  for (auto& [key, trials] : groups_) {
    std::stable_sort(trials.begin(), trials.end(), [](const Trial& a, const Trial& b) {
      const TrialRecord& ra = record_of(a);
      const TrialRecord& rb = record_of(b);
      return std::pair(ra.sequence_index, ra.trial_index) <
             std::pair(rb.sequence_index, rb.trial_index);
    });
    keys.push_back(key);
  }
  design_ = design_of(keys);
}

template <typename Trial>
std::size_t Grouped<Trial>::trial_count() const {
  std::size_t n = 0;
  for (const auto& [key, trials] : groups_) n += trials.size();
  return n;
}

template <typename Trial>
std::vector<std::string> Grouped<Trial>::participants() const {
  std::vector<std::string> ids;
  for (const auto& [key, trials] : groups_) {
    if (ids.empty() || ids.back() != key.participant_id) ids.push_back(key.participant_id);
  }
  return ids;
}

}  // namespace fittsnorm
