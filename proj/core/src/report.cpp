#include "fittsnorm/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "fittsnorm/effective.hpp"
#include "fittsnorm/error.hpp"

namespace fittsnorm {

namespace {

std::string quote_if_needed(const std::string& field, char delimiter) {
  if (field.find_first_of(std::string{delimiter, '"', '\n', '\r'}) == std::string::npos) {
    return field;
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string opt_fixed(const std::optional<double>& v, int digits) {
  return v ? format_fixed(*v, digits) : "";
}

}  // namespace

void write_table(std::ostream& out, const Table& table, char delimiter) {
  auto write_row = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out << delimiter;
      out << quote_if_needed(row[i], delimiter);
    }
    out << '\n';
  };
  write_row(table.header);
  for (const auto& row : table.rows) write_row(row);
}

std::string to_text(const Table& table, char delimiter) {
  std::ostringstream out;
  write_table(out, table, delimiter);
  return out.str();
}

std::string format_fixed(double value, int digits) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

Table screening_table(const ScreeningReport& report) {
  Table t{{"participant", "input", "spatial_removed", "iqr_removed", "excluded"}, {}};
  for (const auto& [pid, c] : report.per_participant) {
    t.rows.push_back({pid, std::to_string(c.input), std::to_string(c.spatial), std::to_string(c.iqr),
                      c.excluded ? "yes" : "no"});
  }
  t.rows.push_back({"TOTAL", std::to_string(report.n_input_trials),
                    std::to_string(report.n_spatial_removed), std::to_string(report.n_iqr_removed),
                    std::to_string(report.removed_participant_ids.size()) + " participants (" +
                        std::to_string(report.n_participant_removed) + " trials); retained " +
                        std::to_string(report.n_retained) + " (" +
                        format_fixed(report.retained_fraction_pct(), 2) + "%)"});
  return t;
}

Table model_table(std::span<const ModelRow> rows, Scope scope) {
  Table t{{"rank", "model", "scope", "a_s", "b_s_per_bit", "r2", "aic", "bic", "delta_aic",
           "aic_support", "delta_bic", "bic_evidence", "n_points", "flag"},
          {}};
  std::size_t rank = 0;
  for (const ModelRow& r : rows) {
    ++rank;
    if (!r.fit) {
      t.rows.push_back({std::to_string(rank), r.spec.name(), std::string(to_string(scope)), "", "", "",
                        "", "", "", "", "", "", "", "fit failed: " + r.error});
      continue;
    }
    const FitResult& f = *r.fit;
    t.rows.push_back({std::to_string(rank), r.spec.name(), std::string(to_string(scope)),
                      format_fixed(f.a, 6), format_fixed(f.b, 6), format_fixed(f.r2, 6),
                      format_fixed(f.aic, 3), format_fixed(f.bic, 3), format_fixed(r.delta_aic, 3),
                      r.aic_label, format_fixed(r.delta_bic, 3), r.bic_label,
                      std::to_string(f.n_points), r.negative_slope ? "negative slope" : ""});
  }
  return t;
}

Table points_table(std::span<const ConditionPoint> points, const ModelSpec& spec) {
  Table t{{"model", "bias", "A", "W", "id_bits", "mt_s", "participants"}, {}};
  for (const ConditionPoint& p : points) {
    t.rows.push_back({spec.name(), std::string(to_string(p.bias)),
                      format_fixed(p.condition.amplitude_px, 0), format_fixed(p.condition.width_px, 0),
                      format_fixed(p.id_bits, 6), format_fixed(p.mt_s, 6),
                      std::to_string(p.n_participants)});
  }
  return t;
}

std::vector<ThroughputRow> throughput_rows(const AnalysisTable& table,
                                           std::span<const ModelSpec> specs) {
  std::vector<ThroughputRow> out;
  for (const ModelSpec& spec : specs) {
    ThroughputRow row;
    row.spec = spec;
    for (Bias b : kAllBiases) {
      try {
        row.tp[static_cast<std::size_t>(b)] = tp_mean_of_means(table, spec, b).grand_mean;
      } catch (const Error& e) {
        row.note += std::string(e.what()) + "; ";
      }
    }
    if (row.tp[0] && row.tp[1] && row.tp[2]) {
      try {
        row.stability = stability(*row.tp[0], *row.tp[1], *row.tp[2]);
      } catch (const Error& e) {
        row.note += std::string(e.what()) + "; ";
      }
    }
    try {
      row.slope_tp = tp_slope_reciprocal(ols_fit(build_points(table, spec, Scope::mixed)));
    } catch (const Error& e) {
      row.note += std::string("1/b: ") + e.what() + "; ";
    }
    out.push_back(std::move(row));
  }
  return out;
}

Table throughput_table(std::span<const ThroughputRow> rows) {
  Table t{{"model", "tp_accurate", "tp_neutral", "tp_fast", "tp_diff_pct", "tp_cv_pct",
           "tp_slope_reciprocal_secondary", "note"},
          {}};
  for (const ThroughputRow& r : rows) {
    t.rows.push_back({r.spec.name(), opt_fixed(r.tp[0], 4), opt_fixed(r.tp[1], 4),
                      opt_fixed(r.tp[2], 4),
                      r.stability ? format_fixed(r.stability->tp_diff, 4) : "",
                      r.stability ? format_fixed(r.stability->tp_cv, 4) : "",
                      opt_fixed(r.slope_tp, 4), r.note});
  }
  return t;
}

Table normality_table(const PassRateReport& report, AxisMode axis, double alpha) {
  Table t{{"bias", "axis", "alpha", "test", "groups", "passed", "degenerate", "pass_pct"}, {}};
  for (const BiasPassRates& b : report.per_bias) {
    const std::string bias(to_string(b.bias));
    for (const auto& [name, c] : {std::pair{"shapiro-wilk", b.one_d}, std::pair{"henze-zirkler", b.two_d}}) {
      t.rows.push_back({bias, std::string(to_string(axis)), format_fixed(alpha, 3), name,
                        std::to_string(c.tests), std::to_string(c.passed),
                        std::to_string(c.degenerate), opt_fixed(c.pass_pct(), 2)});
    }
  }
  return t;
}

Table simulation_means_table(const SimResult& result) {
  Table t{{"n", "model"}, {}};
  for (Metric m : kAllMetrics) t.header.push_back("mean_" + std::string(to_string(m)));
  for (const SizeResult& s : result.sizes) {
    for (const ModelSpec& spec : ModelSpec::all()) {
      std::vector<std::string> row{std::to_string(s.n), spec.name()};
      for (std::size_t m = 0; m < kAllMetrics.size(); ++m) {
        row.push_back(format_fixed(s.mean[spec.index()][m], 6));
      }
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

Table simulation_wins_table(const SimResult& result) {
  Table t{{"n", "metric", "model", "wins", "win_probability", "co_wins", "ties", "no_winner"}, {}};
  for (const SizeResult& s : result.sizes) {
    for (const MetricWins& w : s.wins) {
      for (const ModelSpec& spec : ModelSpec::all()) {
        const std::size_t i = spec.index();
        t.rows.push_back({std::to_string(s.n), std::string(to_string(w.metric)), spec.name(),
                          std::to_string(w.wins[i]),
                          format_fixed(w.win_probability(i, result.iterations), 4),
                          std::to_string(w.co_wins[i]), std::to_string(w.ties),
                          std::to_string(w.no_winner)});
      }
    }
  }
  return t;
}

Table group_table(const AnalysisTable& table) {
  Table t{{"participant", "bias", "A", "W", "n", "mean_mt_s", "error_rate_pct", "sigma_x_tt",
           "sigma_y_tt", "sigma_xy_tt", "ae_tt", "sigma_x_ct", "sigma_y_ct", "sigma_xy_ct", "ae_ct"},
          {}};
  for (const ModelSpec& spec : ModelSpec::all()) t.header.push_back("id_" + spec.name());
  for (std::size_t p = 0; p < table.participant_count(); ++p) {
    for (Bias b : kAllBiases) {
      for (std::size_t c = 0; c < table.conditions().size(); ++c) {
        const auto& cell = table.cell(p, b, c);
        if (!cell) continue;
        std::vector<std::string> row{table.participants()[p], std::string(to_string(b)),
                                     format_fixed(table.conditions()[c].amplitude_px, 0),
                                     format_fixed(table.conditions()[c].width_px, 0),
                                     std::to_string(cell->n), format_fixed(cell->mean_mt_s, 4),
                                     format_fixed(cell->error_rate_pct, 2)};
        for (AxisMode axis : kAllAxisModes) {
          const AxisSpread& s = cell->spread_of(axis);
          for (double v : {s.sigma_x, s.sigma_y, s.sigma_xy, s.a_e}) row.push_back(format_fixed(v, 4));
        }
        for (const auto& id : cell->id) row.push_back(opt_fixed(id, 6));
        t.rows.push_back(std::move(row));
      }
    }
  }
  return t;
}

}  // namespace fittsnorm
