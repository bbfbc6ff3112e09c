#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fittsnorm/geometry.hpp"

namespace fittsnorm {

enum class NormalityTest { shapiro_wilk, henze_zirkler };

[[nodiscard]] std::string_view to_string(NormalityTest test);

struct NormalityResult {
  NormalityTest test = NormalityTest::shapiro_wilk;
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
  bool passed = true;  ///< p_value > alpha
};

inline constexpr double kDefaultAlpha = 0.05;

/// Shapiro-Wilk W with Royston's p-value approximation (AS R94), 3 <= n <= 5000.
/// Throws InsufficientDataError / ValidationError on n out of range and
/// DegenerateError when all values are equal.
[[nodiscard]] NormalityResult shapiro_wilk(std::span<const double> xs,
                                           double alpha = kDefaultAlpha);

/// Henze-Zirkler test of bivariate normality with the log-normal p-value
/// approximation. Throws DegenerateError when the covariance is singular.
[[nodiscard]] NormalityResult henze_zirkler(std::span<const Point> points,
                                            double alpha = kDefaultAlpha);

struct PassCount {
  std::size_t tests = 0;
  std::size_t passed = 0;
  std::size_t degenerate = 0;  ///< counted in `tests`, never as passed

  /// Empty when no group was tested.
  [[nodiscard]] std::optional<double> pass_pct() const;
};

struct BiasPassRates {
  Bias bias = Bias::neutral;
  PassCount one_d;  ///< Shapiro-Wilk on along-axis x
  PassCount two_d;  ///< Henze-Zirkler on (x, y)
};

struct PassRateReport {
  std::array<BiasPassRates, 3> per_bias{};
  std::vector<std::string> warnings;
};

/// Runs both tests on every group's endpoints under `axis` and tallies passes per bias.
[[nodiscard]] PassRateReport aggregate_pass_rates(const MeasuredDataset& dataset, AxisMode axis,
                                                  double alpha = kDefaultAlpha,
                                                  std::size_t max_workers = 0);

}  // namespace fittsnorm
