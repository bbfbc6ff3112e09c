#pragma once

#include <span>

namespace fittsnorm {

[[nodiscard]] double mean(std::span<const double> xs);

/// Sample variance with the n-1 denominator. Requires n >= 2.
[[nodiscard]] double sample_variance(std::span<const double> xs);
[[nodiscard]] double sample_sd(std::span<const double> xs);

/// Quantile by linear interpolation between order statistics (position p*(n-1)
/// on zero-based sorted data). `sorted` must be ascending and non-empty.
[[nodiscard]] double quantile_linear(std::span<const double> sorted, double p);

struct Fences {
  double q1 = 0.0;
  double q3 = 0.0;
  double lower = 0.0;
  double upper = 0.0;

  [[nodiscard]] double iqr() const { return q3 - q1; }
  /// Strictly beyond a fence; a value equal to a fence is kept.
  [[nodiscard]] bool outside(double v) const { return v < lower || v > upper; }
};

/// Tukey-style fences Q1 - k*IQR and Q3 + k*IQR over unsorted values.
[[nodiscard]] Fences iqr_fences(std::span<const double> values, double k);

}  // namespace fittsnorm
