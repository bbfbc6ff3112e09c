#include "fittsnorm/throughput.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "fittsnorm/error.hpp"

namespace fittsnorm {

double participant_throughput(std::span<const double> ids_bits, std::span<const double> mts_s) {
  if (ids_bits.size() != mts_s.size() || ids_bits.empty()) {
    throw ValidationError("throughput needs matching, non-empty ID and MT lists");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < ids_bits.size(); ++i) {
    if (!(mts_s[i] > 0.0)) throw UndefinedThroughputError("movement time must be positive");
    sum += ids_bits[i] / mts_s[i];
  }
  return sum / static_cast<double>(ids_bits.size());
}

ThroughputResult tp_mean_of_means(const AnalysisTable& table, const ModelSpec& spec, Bias bias,
                                  std::span<const std::size_t> participants) {
  ThroughputResult out;
  out.spec = spec;
  out.bias = bias;
  out.k = table.conditions().size();
  const std::size_t si = spec.index();
  std::vector<double> ids(out.k);
  std::vector<double> mts(out.k);
  double total = 0.0;
  for (std::size_t p : participants) {
    bool complete = true;
    for (std::size_t c = 0; c < out.k && complete; ++c) {
      const std::optional<GroupMetrics>& cell = table.cell(p, bias, c);
      if (!cell || !cell->id[si]) {
        complete = false;
        break;
      }
      ids[c] = *cell->id[si];
      mts[c] = cell->mean_mt_s;
    }
    if (!complete) {
      out.warnings.push_back(table.participants()[p] + " lacks a " + std::string(to_string(bias)) +
                             " condition under " + spec.name() + "; left out of throughput");
      continue;
    }
    const double tp = participant_throughput(ids, mts);
    out.per_participant.emplace_back(table.participants()[p], tp);
    total += tp;
  }
  if (out.per_participant.empty()) {
    throw InsufficientDataError("no participant has every " + std::string(to_string(bias)) +
                                " condition under " + spec.name());
  }
  out.grand_mean = total / static_cast<double>(out.per_participant.size());
  return out;
}

ThroughputResult tp_mean_of_means(const AnalysisTable& table, const ModelSpec& spec, Bias bias) {
  const std::vector<std::size_t> all = table.all_participants();
  return tp_mean_of_means(table, spec, bias, all);
}

double tp_slope_reciprocal(const FitResult& fit) {
  if (!(fit.b > 0.0)) throw UndefinedThroughputError("slope must be positive for 1/b throughput");
  return 1.0 / fit.b;
}

StabilityReport stability(double tp_accurate, double tp_neutral, double tp_fast) {
  const std::array<double, 3> tps = {tp_accurate, tp_neutral, tp_fast};
  for (double tp : tps) {
    if (!(tp > 0.0) || !std::isfinite(tp)) {
      throw UndefinedThroughputError("stability needs three positive throughputs");
    }
  }
  StabilityReport r{tp_accurate, tp_neutral, tp_fast, 0.0, 0.0};
  const auto [lo, hi] = std::minmax_element(tps.begin(), tps.end());
  r.tp_diff = 100.0 * (*hi - *lo) / *hi;
  if (*hi == *lo) return r;
  const double m = (tps[0] + tps[1] + tps[2]) / 3.0;
  double ss = 0.0;
  for (double tp : tps) ss += (tp - m) * (tp - m);
  r.tp_cv = 100.0 * std::sqrt(ss / 2.0) / m;
  return r;
}

}  // namespace fittsnorm
