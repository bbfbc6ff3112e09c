#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fittsnorm/analysis.hpp"

namespace fittsnorm {

/// Which bias conditions feed a regression: one bias, or all three pooled.
enum class Scope { accurate, neutral, fast, mixed };

[[nodiscard]] std::string_view to_string(Scope scope);
[[nodiscard]] std::optional<Scope> parse_scope(std::string_view text);
[[nodiscard]] std::vector<Bias> biases_of(Scope scope);

/// Mean ID and mean MT across participants for one bias x condition.
struct ConditionPoint {
  double id_bits = 0.0;
  double mt_s = 0.0;
  Bias bias = Bias::neutral;
  Condition condition;
  std::size_t n_participants = 0;
};

/// Condition-level points for `spec`, ordered by bias then (A, W).
///
/// Each point averages per-participant IDs and mean MTs over `participants`
/// (sorted indices into the table). Participants lacking the group or its ID
/// contribute nothing to that point; a point with no contributors is dropped.
/// Notes about missing data are appended to `warnings` when it is non-null.
[[nodiscard]] std::vector<ConditionPoint> build_points(const AnalysisTable& table,
                                                       const ModelSpec& spec, Scope scope,
                                                       std::span<const std::size_t> participants,
                                                       std::vector<std::string>* warnings = nullptr);
[[nodiscard]] std::vector<ConditionPoint> build_points(const AnalysisTable& table,
                                                       const ModelSpec& spec, Scope scope,
                                                       std::vector<std::string>* warnings = nullptr);

/// Least-squares line MT = a + b*ID with information criteria over n points.
struct FitResult {
  double a = 0.0;
  double b = 0.0;
  double r2 = 0.0;
  double aic = 0.0;  ///< n*ln(RSS/n) + 2p, p = 2; -inf when RSS = 0
  double bic = 0.0;  ///< n*ln(RSS/n) + p*ln(n)
  std::size_t n_points = 0;
  double rss = 0.0;
};

inline constexpr int kFitParameters = 2;

/// Throws InsufficientDataError below three points, SingularFitError when all x are equal.
[[nodiscard]] FitResult ols_fit(std::span<const double> x, std::span<const double> y);
[[nodiscard]] FitResult ols_fit(std::span<const ConditionPoint> points);

[[nodiscard]] std::string aic_support_label(double delta_aic);
[[nodiscard]] std::string bic_evidence_label(double delta_bic);

struct ModelRow {
  ModelSpec spec = ModelSpec::nominal();
  std::optional<FitResult> fit;  ///< empty when the fit failed
  std::string error;
  double delta_aic = 0.0;
  double delta_bic = 0.0;
  std::string aic_label;
  std::string bic_label;
  bool negative_slope = false;
};

struct CompareOptions {
  bool parallel = true;
};

/// Fits every spec and ranks rows by R^2, best first. Failed fits are kept at
/// the bottom with their error text. Equal R^2 keeps input order. Deltas are
/// relative to the lowest AIC and BIC among successful fits.
[[nodiscard]] std::vector<ModelRow> compare_models(const AnalysisTable& table, Scope scope,
                                                   std::span<const ModelSpec> specs,
                                                   std::span<const std::size_t> participants,
                                                   const CompareOptions& options = {});
[[nodiscard]] std::vector<ModelRow> compare_models(const AnalysisTable& table, Scope scope,
                                                   const CompareOptions& options = {});

}  // namespace fittsnorm
