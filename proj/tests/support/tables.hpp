#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fittsnorm/analysis.hpp"
#include "fittsnorm/synth.hpp"

namespace fx {

/// Builds an analysis table cell by cell. `cell(p, bias, c)` returns the group's
/// (ID per spec, mean MT) or nothing for a missing group.
struct CellValue {
  std::array<std::optional<double>, fittsnorm::ModelSpec::kCount> id{};
  double mt_s = 0.0;
};

inline fittsnorm::AnalysisTable make_table(
    std::size_t n_participants, const std::vector<fittsnorm::Condition>& conditions,
    const std::function<std::optional<CellValue>(std::size_t, fittsnorm::Bias, std::size_t)>& cell) {
  std::vector<std::string> ids;
  for (std::size_t p = 0; p < n_participants; ++p) ids.push_back(fittsnorm::synthetic_participant_id(p));
  std::vector<std::optional<fittsnorm::GroupMetrics>> cells;
  for (std::size_t p = 0; p < n_participants; ++p) {
    for (fittsnorm::Bias b : fittsnorm::kAllBiases) {
      for (std::size_t c = 0; c < conditions.size(); ++c) {
        const auto v = cell(p, b, c);
        if (!v) {
          cells.emplace_back();
          continue;
        }
        fittsnorm::GroupMetrics m;
        m.n = 25;
        m.mean_mt_s = v->mt_s;
        m.id = v->id;
        cells.emplace_back(m);
      }
    }
  }
  return fittsnorm::AnalysisTable(ids, conditions, cells, {});
}

/// Every spec gets the same ID.
inline CellValue uniform_cell(double id, double mt_s) {
  CellValue v;
  v.id.fill(id);
  v.mt_s = mt_s;
  return v;
}

}  // namespace fx
