#include "fittsnorm/modeling.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include "fittsnorm/error.hpp"

namespace fittsnorm {

std::string_view to_string(Scope scope) {
  switch (scope) {
    case Scope::accurate: return "accurate";
    case Scope::neutral: return "neutral";
    case Scope::fast: return "fast";
    case Scope::mixed: return "mixed";
  }
  return "mixed";
}

std::optional<Scope> parse_scope(std::string_view text) {
  if (text == "mixed") return Scope::mixed;
  if (auto b = parse_bias(text)) return static_cast<Scope>(*b);
  return std::nullopt;
}

std::vector<Bias> biases_of(Scope scope) {
  if (scope == Scope::mixed) return {kAllBiases.begin(), kAllBiases.end()};
  return {static_cast<Bias>(scope)};
}

std::vector<ConditionPoint> build_points(const AnalysisTable& table, const ModelSpec& spec,
                                         Scope scope, std::span<const std::size_t> participants,
                                         std::vector<std::string>* warnings) {
  std::vector<ConditionPoint> points;
  const std::size_t si = spec.index();
  for (Bias bias : biases_of(scope)) {
    for (std::size_t c = 0; c < table.conditions().size(); ++c) {
      double id_sum = 0.0;
      double mt_sum = 0.0;
      std::size_t n = 0;
      for (std::size_t p : participants) {
        const std::optional<GroupMetrics>& cell = table.cell(p, bias, c);
        if (!cell || !cell->id[si]) {
          if (warnings != nullptr) {
            warnings->push_back(table.participants()[p] + " has no " + spec.name() +
                                " value for " + std::string(to_string(bias)) + " A=" +
                                std::to_string(table.conditions()[c].amplitude_px) +
                                " W=" + std::to_string(table.conditions()[c].width_px));
          }
          continue;
        }
        id_sum += *cell->id[si];
        mt_sum += cell->mean_mt_s;
        ++n;
      }
      if (n == 0) continue;
      points.push_back({id_sum / static_cast<double>(n), mt_sum / static_cast<double>(n), bias,
                        table.conditions()[c], n});
    }
  }
  return points;
}

std::vector<ConditionPoint> build_points(const AnalysisTable& table, const ModelSpec& spec,
                                         Scope scope, std::vector<std::string>* warnings) {
  const std::vector<std::size_t> all = table.all_participants();
  return build_points(table, spec, scope, all, warnings);
}

FitResult ols_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("x and y differ in length");
  const std::size_t n = x.size();
  if (n < 3) throw InsufficientDataError("regression needs at least three points");
  const double nd = static_cast<double>(n);
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= nd;
  my /= nd;
  double sxx = 0.0;
  double sxy = 0.0;
  double tss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    tss += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw SingularFitError("all ID values are equal");
  FitResult f;
  f.n_points = n;
  f.b = sxy / sxx;
  f.a = my - f.b * mx;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (f.a + f.b * x[i]);
    f.rss += r * r;
  }
  f.r2 = tss > 0.0 ? 1.0 - f.rss / tss : 1.0;
  if (f.rss > 0.0) {
    const double base = nd * std::log(f.rss / nd);
    f.aic = base + 2.0 * kFitParameters;
    f.bic = base + kFitParameters * std::log(nd);
  } else {
    f.aic = -std::numeric_limits<double>::infinity();
    f.bic = -std::numeric_limits<double>::infinity();
  }
  return f;
}

FitResult ols_fit(std::span<const ConditionPoint> points) {
  std::vector<double> x;
  std::vector<double> y;
  x.reserve(points.size());
  y.reserve(points.size());
  for (const ConditionPoint& p : points) {
    x.push_back(p.id_bits);
    y.push_back(p.mt_s);
  }
  return ols_fit(x, y);
}

std::string aic_support_label(double d) {
  if (d < 2.0) return "supported";
  if (d < 4.0) return "considerable support";
  if (d < 7.0) return "much less support";
  if (d <= 10.0) return "little support";
  return "essentially no support";
}

std::string bic_evidence_label(double d) {
  if (d < 2.0) return "not significant";
  if (d < 6.0) return "positive";
  if (d <= 10.0) return "strong";
  return "very strong";
}

namespace {

ModelRow fit_row(const AnalysisTable& table, Scope scope, const ModelSpec& spec,
                 std::span<const std::size_t> participants) {
  ModelRow row;
  row.spec = spec;
  try {
    const std::vector<ConditionPoint> points = build_points(table, spec, scope, participants);
    row.fit = ols_fit(points);
    row.negative_slope = row.fit->b < 0.0;
  } catch (const Error& e) {
    row.error = e.what();
  }
  return row;
}

double delta_from(double value, double best) {
  if (std::isinf(best) && best < 0.0) {
    return (std::isinf(value) && value < 0.0) ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return value - best;
}

}  // namespace

std::vector<ModelRow> compare_models(const AnalysisTable& table, Scope scope,
                                     std::span<const ModelSpec> specs,
                                     std::span<const std::size_t> participants,
                                     const CompareOptions& options) {
  std::vector<ModelRow> rows(specs.size());
  if (options.parallel && specs.size() > 1) {
    std::vector<std::future<ModelRow>> futures;
    futures.reserve(specs.size());
    for (const ModelSpec& spec : specs) {
      futures.push_back(std::async(std::launch::async, [&table, scope, spec, participants] {
        return fit_row(table, scope, spec, participants);
      }));
    }
    for (std::size_t i = 0; i < specs.size(); ++i) rows[i] = futures[i].get();
  } else {
    for (std::size_t i = 0; i < specs.size(); ++i) {
      rows[i] = fit_row(table, scope, specs[i], participants);
    }
  }

  double best_aic = std::numeric_limits<double>::infinity();
  double best_bic = std::numeric_limits<double>::infinity();
  for (const ModelRow& r : rows) {
    if (!r.fit) continue;
    best_aic = std::min(best_aic, r.fit->aic);
    best_bic = std::min(best_bic, r.fit->bic);
  }
  for (ModelRow& r : rows) {
    if (!r.fit) continue;
    r.delta_aic = delta_from(r.fit->aic, best_aic);
    r.delta_bic = delta_from(r.fit->bic, best_bic);
    r.aic_label = aic_support_label(r.delta_aic);
    r.bic_label = bic_evidence_label(r.delta_bic);
  }
  std::stable_sort(rows.begin(), rows.end(), [](const ModelRow& a, const ModelRow& b) {
    if (a.fit.has_value() != b.fit.has_value()) return a.fit.has_value();
    if (!a.fit) return false;
    return a.fit->r2 > b.fit->r2;
  });
  return rows;
}

std::vector<ModelRow> compare_models(const AnalysisTable& table, Scope scope,
                                     const CompareOptions& options) {
  const std::vector<std::size_t> all = table.all_participants();
  return compare_models(table, scope, ModelSpec::all(), all, options);
}

}  // namespace fittsnorm
