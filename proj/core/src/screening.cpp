#include "fittsnorm/screening.hpp"

#include <algorithm>
#include <set>

#include "fittsnorm/descriptive.hpp"

namespace fittsnorm {

namespace {

Removal removal_of(const GroupKey& key, const MeasuredTrial& t, RemovalStage stage) {
  return Removal{key, t.record.sequence_index, t.record.trial_index, stage};
}

}  // namespace

std::string_view to_string(RemovalStage stage) {
  switch (stage) {
    case RemovalStage::spatial:
      return "spatial";
    case RemovalStage::iqr:
      return "iqr";
    case RemovalStage::participant:
      return "participant";
  }
  return "unknown";
}

FilterResult spatial_filter(const MeasuredDataset& dataset) {
  FilterResult result;
  MeasuredDataset::GroupMap kept;
  for (const auto& [key, trials] : dataset.groups()) {
    const double min_distance = key.condition.amplitude_px / 2.0;
    std::vector<MeasuredTrial> survivors;
    for (const MeasuredTrial& t : trials) {
      if (t.movement_distance_px() < min_distance) {
        result.removals.push_back(removal_of(key, t, RemovalStage::spatial));
      } else {
        survivors.push_back(t);
      }
    }
    if (!survivors.empty()) kept.emplace(key, std::move(survivors));
  }
  result.dataset = MeasuredDataset(std::move(kept));
  return result;
}

FilterResult iqr_trial_filter(const MeasuredDataset& dataset, const ScreeningOptions& options) {
  FilterResult result;
  MeasuredDataset::GroupMap kept;
  for (const auto& [key, trials] : dataset.groups()) {
    if (trials.size() < options.min_iqr_group_size) {
      result.warnings.push_back("IQR filter skipped for " + describe(key) + " (" +
                                std::to_string(trials.size()) + " trials)");
      kept.emplace(key, trials);
      continue;
    }
    std::vector<double> mts;
    mts.reserve(trials.size());
    for (const MeasuredTrial& t : trials) mts.push_back(t.record.movement_time_ms());
    const Fences fences = iqr_fences(mts, options.iqr_multiplier);

    std::vector<MeasuredTrial> survivors;
    for (const MeasuredTrial& t : trials) {
      if (fences.outside(t.record.movement_time_ms())) {
        result.removals.push_back(removal_of(key, t, RemovalStage::iqr));
      } else {
        survivors.push_back(t);
      }
    }
    if (!survivors.empty()) kept.emplace(key, std::move(survivors));
  }
  result.dataset = MeasuredDataset(std::move(kept));
  return result;
}

ParticipantFilterResult participant_filter(const MeasuredDataset& dataset,
                                           std::span<const Removal> prior_removals,
                                           const ScreeningOptions& options) {
  ParticipantFilterResult result;
  std::set<std::string> excluded;

  std::map<GroupKey, std::size_t> removed_per_group;
  for (const Removal& r : prior_removals) ++removed_per_group[r.key];
  for (const auto& [key, count] : removed_per_group) {
    if (count >= options.participant_outlier_threshold) excluded.insert(key.participant_id);
  }

  std::map<std::string, std::pair<double, std::size_t>> sums;
  for (const auto& [key, trials] : dataset.groups()) {
    auto& [sum, n] = sums[key.participant_id];
    for (const MeasuredTrial& t : trials) sum += t.record.movement_time_ms();
    n += trials.size();
  }
  if (sums.size() < options.min_participants_for_fences) {
    result.warnings.push_back("participant MT fences skipped (" + std::to_string(sums.size()) +
                              " participants)");
  } else {
    std::vector<double> means;
    means.reserve(sums.size());
    for (const auto& [id, s] : sums) means.push_back(s.first / static_cast<double>(s.second));
    const Fences fences = iqr_fences(means, options.iqr_multiplier);
    for (const auto& [id, s] : sums) {
      if (fences.outside(s.first / static_cast<double>(s.second))) excluded.insert(id);
    }
  }

  MeasuredDataset::GroupMap kept;
  for (const auto& [key, trials] : dataset.groups()) {
    if (excluded.contains(key.participant_id)) {
      result.removed_trials += trials.size();
    } else {
      kept.emplace(key, trials);
    }
  }
  result.removed_ids.assign(excluded.begin(), excluded.end());
  result.dataset = MeasuredDataset(std::move(kept));
  return result;
}

double ScreeningReport::retained_fraction_pct() const {
  if (n_input_trials == 0) return 0.0;
  return 100.0 * static_cast<double>(n_retained) / static_cast<double>(n_input_trials);
}

ScreeningResult screen(const MeasuredDataset& dataset, const ScreeningOptions& options) {
  ScreeningResult out;
  ScreeningReport& report = out.report;
  report.n_input_trials = dataset.trial_count();
  for (const auto& [key, trials] : dataset.groups()) {
    report.per_participant[key.participant_id].input += trials.size();
  }

  FilterResult spatial = spatial_filter(dataset);
  FilterResult iqr = iqr_trial_filter(spatial.dataset, options);

  std::vector<Removal> trial_removals = spatial.removals;
  trial_removals.insert(trial_removals.end(), iqr.removals.begin(), iqr.removals.end());
  ParticipantFilterResult participants = participant_filter(iqr.dataset, trial_removals, options);

  report.n_spatial_removed = spatial.removals.size();
  report.n_iqr_removed = iqr.removals.size();
  report.n_participant_removed = participants.removed_trials;
  report.n_retained = participants.dataset.trial_count();
  report.removed_participant_ids = participants.removed_ids;
  for (const Removal& r : spatial.removals) ++report.per_participant[r.key.participant_id].spatial;
  for (const Removal& r : iqr.removals) ++report.per_participant[r.key.participant_id].iqr;
  for (const std::string& id : participants.removed_ids) report.per_participant[id].excluded = true;
  for (auto* w : {&spatial.warnings, &iqr.warnings, &participants.warnings}) {
    report.warnings.insert(report.warnings.end(), w->begin(), w->end());
  }

  out.removals = std::move(trial_removals);
  for (const auto& [key, trials] : iqr.dataset.groups()) {
    if (!std::binary_search(participants.removed_ids.begin(), participants.removed_ids.end(),
                            key.participant_id)) {
      continue;
    }
    for (const MeasuredTrial& t : trials) {
      out.removals.push_back(removal_of(key, t, RemovalStage::participant));
    }
  }
  out.dataset = std::move(participants.dataset);
  return out;
}

}  // namespace fittsnorm
