#include "fittsnorm/descriptive.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "fittsnorm/error.hpp"

namespace fittsnorm {

double mean(std::span<const double> xs) {
  if (xs.empty()) throw InsufficientDataError("mean of an empty sample");
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

double sample_variance(std::span<const double> xs) {
  if (xs.size() < 2) throw InsufficientDataError("variance needs at least two values");
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return ss / static_cast<double>(xs.size() - 1);
}

double sample_sd(std::span<const double> xs) { return std::sqrt(sample_variance(xs)); }

double quantile_linear(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw InsufficientDataError("quantile of an empty sample");
  const double h = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

Fences iqr_fences(std::span<const double> values, double k) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  Fences f;
  f.q1 = quantile_linear(sorted, 0.25);
  f.q3 = quantile_linear(sorted, 0.75);
  f.lower = f.q1 - k * f.iqr();
  f.upper = f.q3 + k * f.iqr();
  return f;
}

}  // namespace fittsnorm
