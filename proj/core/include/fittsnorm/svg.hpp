#pragma once

#include <optional>
#include <span>
#include <string>

#include "fittsnorm/geometry.hpp"

namespace fittsnorm {

/// chi-square(2) quantile at 0.95.
inline constexpr double kChi2Df2Q95 = 5.991464547107979;

struct Ellipse {
  double cx = 0.0;
  double cy = 0.0;
  double semi_major = 0.0;
  double semi_minor = 0.0;
  double angle_rad = 0.0;  ///< direction of the major axis
};

/// Ellipse of the sample covariance (n-1) scaled by `chi2_quantile`.
/// Empty for fewer than three points.
[[nodiscard]] std::optional<Ellipse> confidence_ellipse(std::span<const Point> points,
                                                        double chi2_quantile = kChi2Df2Q95);

/// SVG 1.1 scatter of endpoints in the task-axis frame with the target circle
/// (diameter W, centred on the origin) and the 95% ellipse when n >= 3.
[[nodiscard]] std::string emit_scatter_svg(std::span<const RotatedEndpoint> endpoints,
                                           const Condition& condition,
                                           const std::string& title = "");

}  // namespace fittsnorm
