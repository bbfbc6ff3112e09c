#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fittsnorm/normality.hpp"
#include "fittsnorm/screening.hpp"
#include "fittsnorm/simulation.hpp"

namespace fittsnorm {

/// Header row plus data rows, written as delimiter-separated text.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Fields containing the delimiter, a quote or a newline are double-quoted.
void write_table(std::ostream& out, const Table& table, char delimiter = ',');
[[nodiscard]] std::string to_text(const Table& table, char delimiter = ',');

/// Fixed-point text with `digits` decimals; "inf", "-inf" and "nan" for the specials.
[[nodiscard]] std::string format_fixed(double value, int digits);

[[nodiscard]] Table screening_table(const ScreeningReport& report);
[[nodiscard]] Table model_table(std::span<const ModelRow> rows, Scope scope);
[[nodiscard]] Table points_table(std::span<const ConditionPoint> points, const ModelSpec& spec);

/// One row per spec: per-bias TP, stability and (secondary) slope-reciprocal TP.
struct ThroughputRow {
  ModelSpec spec = ModelSpec::nominal();
  std::array<std::optional<double>, 3> tp{};
  std::optional<StabilityReport> stability;
  std::optional<double> slope_tp;  ///< 1/b of the mixed fit
  std::string note;
};

[[nodiscard]] std::vector<ThroughputRow> throughput_rows(const AnalysisTable& table,
                                                         std::span<const ModelSpec> specs);
[[nodiscard]] Table throughput_table(std::span<const ThroughputRow> rows);
[[nodiscard]] Table normality_table(const PassRateReport& report, AxisMode axis, double alpha);
[[nodiscard]] Table simulation_means_table(const SimResult& result);
[[nodiscard]] Table simulation_wins_table(const SimResult& result);
[[nodiscard]] Table group_table(const AnalysisTable& table);

}  // namespace fittsnorm
