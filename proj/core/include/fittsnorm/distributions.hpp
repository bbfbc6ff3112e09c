#pragma once

namespace fittsnorm {

/// Standard normal CDF.
[[nodiscard]] double normal_cdf(double z);
/// Upper tail of N(mean, sd).
[[nodiscard]] double normal_sf(double x, double mean, double sd);
/// Standard normal quantile (Wichura's PPND16, |relative error| ~ 1e-16).
/// Requires 0 < p < 1.
[[nodiscard]] double normal_quantile(double p);
/// Upper tail of a log-normal whose log has the given mean and sd.
[[nodiscard]] double lognormal_sf(double x, double log_mean, double log_sd);
/// Quantile of the chi-square distribution with two degrees of freedom.
[[nodiscard]] double chi_square2_quantile(double p);

}  // namespace fittsnorm
