#include "fittsnorm/analysis.hpp"

#include <algorithm>
#include <iterator>

#include "detail/parallel.hpp"
#include "fittsnorm/error.hpp"

namespace fittsnorm {

namespace {

constexpr std::size_t kBiasCount = kAllBiases.size();

std::size_t cell_index(std::size_t participant, Bias bias, std::size_t condition,
                       std::size_t n_conditions) {
  return (participant * kBiasCount + static_cast<std::size_t>(bias)) * n_conditions + condition;
}

struct GroupOutcome {
  std::optional<GroupMetrics> metrics;
  std::vector<std::string> warnings;
};

GroupOutcome analyze_group(const GroupKey& key, const std::vector<MeasuredTrial>& trials,
                           const AnalysisOptions& options) {
  GroupOutcome out;
  if (trials.size() < options.min_group_size) {
    out.warnings.push_back(describe(key) + ": " + std::to_string(trials.size()) +
                           " trials after screening, below the minimum of " +
                           std::to_string(options.min_group_size) + "; group skipped");
    return out;
  }
  GroupMetrics m;
  m.n = trials.size();
  std::vector<TrialRecord> records;
  records.reserve(trials.size());
  for (const MeasuredTrial& t : trials) records.push_back(t.record);
  const SequenceSummary summary = summarize_sequence(records);
  m.mean_mt_s = summary.mean_mt_s;
  m.error_rate_pct = summary.error_rate_pct;

  for (AxisMode axis : kAllAxisModes) {
    const ModelSpec probe =
        ModelSpec::effective(SigmaMode::univariate, axis, AmplitudeMode::nominal);
    const EffectiveStats st = compute_effective(trials, probe, options.amplitude_measure);
    AxisSpread& sp = m.spread[static_cast<std::size_t>(axis)];
    sp.sigma_x = st.sigma_x;
    sp.sigma_y = st.sigma_y;
    sp.sigma_xy = st.sigma_xy;
    sp.a_e = st.a_e;
  }

  for (const ModelSpec& spec : ModelSpec::all()) {
    if (spec.is_nominal()) {
      m.id[spec.index()] = key.condition.nominal_id();
      continue;
    }
    const AxisSpread& sp = m.spread_of(spec.axis());
    EffectiveStats st;
    st.n = m.n;
    st.sigma_x = sp.sigma_x;
    st.sigma_y = sp.sigma_y;
    st.sigma_xy = sp.sigma_xy;
    st.a_e = sp.a_e;
    st.sigma_mode = spec.sigma();
    st.w_e = kEffectiveWidthFactor *
             (spec.sigma() == SigmaMode::univariate ? sp.sigma_x : sp.sigma_xy);
    try {
      m.id[spec.index()] = id_of(spec, key.condition, &st);
    } catch (const DegenerateError&) {
      out.warnings.push_back(describe(key) + ": zero endpoint spread under " + spec.name() +
                             "; ID undefined");
    }
  }
  out.metrics = m;
  return out;
}

}  // namespace

AnalysisTable::AnalysisTable(std::vector<std::string> participants,
                             std::vector<Condition> conditions,
                             std::vector<std::optional<GroupMetrics>> cells,
                             std::vector<std::string> warnings)
    : participants_(std::move(participants)),
      conditions_(std::move(conditions)),
      cells_(std::move(cells)),
      warnings_(std::move(warnings)) {
  if (cells_.size() != participants_.size() * kBiasCount * conditions_.size()) {
    throw ValidationError("analysis table size does not match its dimensions");
  }
}

std::vector<std::size_t> AnalysisTable::all_participants() const {
  std::vector<std::size_t> idx(participants_.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return idx;
}

const std::optional<GroupMetrics>& AnalysisTable::cell(std::size_t participant, Bias bias,
                                                       std::size_t condition) const {
  return cells_.at(cell_index(participant, bias, condition, conditions_.size()));
}

AnalysisTable build_analysis(const MeasuredDataset& dataset, const AnalysisOptions& options) {
  std::vector<std::string> participants = dataset.participants();
  std::vector<Condition> conditions = dataset.design().conditions;

  std::vector<const std::pair<const GroupKey, std::vector<MeasuredTrial>>*> groups;
  groups.reserve(dataset.group_count());
  for (const auto& entry : dataset.groups()) groups.push_back(&entry);

  std::vector<GroupOutcome> outcomes(groups.size());
  detail::parallel_for(
      groups.size(),
      [&](std::size_t i) { outcomes[i] = analyze_group(groups[i]->first, groups[i]->second, options); },
      options.max_workers);

  std::vector<std::optional<GroupMetrics>> cells(participants.size() * kBiasCount *
                                                 conditions.size());
  std::vector<std::string> warnings;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const GroupKey& key = groups[i]->first;
    const auto p = static_cast<std::size_t>(
        std::lower_bound(participants.begin(), participants.end(), key.participant_id) -
        participants.begin());
    const auto c = static_cast<std::size_t>(
        std::lower_bound(conditions.begin(), conditions.end(), key.condition) -
        conditions.begin());
    cells[cell_index(p, key.bias, c, conditions.size())] = std::move(outcomes[i].metrics);
    std::move(outcomes[i].warnings.begin(), outcomes[i].warnings.end(),
              std::back_inserter(warnings));
  }
  return AnalysisTable(std::move(participants), std::move(conditions), std::move(cells),
                       std::move(warnings));
}

}  // namespace fittsnorm
