#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "fittsnorm/geometry.hpp"

namespace fittsnorm {

/// sqrt(2*pi*e): the width that contains ~96.12% of a normal endpoint spread.
/// Reports print it as 4.133.
inline constexpr double kEffectiveWidthFactor = 4.132731354122493;

enum class SigmaMode { univariate, bivariate };
enum class AmplitudeMode { nominal, effective };

/// How the effective amplitude of a single trial is measured.
enum class AmplitudeMeasure {
  euclidean,   ///< |first click - axis origin|
  projection,  ///< axis length + along-axis deviation
};

[[nodiscard]] std::string_view to_string(SigmaMode mode);
[[nodiscard]] std::string_view to_string(AmplitudeMode mode);
[[nodiscard]] std::optional<SigmaMode> parse_sigma_mode(std::string_view text);
[[nodiscard]] std::optional<AmplitudeMode> parse_amplitude_mode(std::string_view text);

/// One of the nine ways to compute an index of difficulty: the nominal ID, or an
/// effective ID from {univariate, bivariate} x {TT, CT} x {A, A_e}.
class ModelSpec {
 public:
  static constexpr std::size_t kCount = 9;

  [[nodiscard]] static ModelSpec nominal();
  [[nodiscard]] static ModelSpec effective(SigmaMode sigma, AxisMode axis, AmplitudeMode amplitude);

  /// Canonical order: nominal, x-tt, x-ct, xy-tt, xy-ct, x-tt-ae, x-ct-ae, xy-tt-ae, xy-ct-ae.
  [[nodiscard]] static const std::array<ModelSpec, kCount>& all();
  [[nodiscard]] static std::optional<ModelSpec> from_name(std::string_view name);

  [[nodiscard]] bool is_nominal() const { return nominal_; }
  [[nodiscard]] SigmaMode sigma() const { return sigma_; }
  [[nodiscard]] AxisMode axis() const { return axis_; }
  [[nodiscard]] AmplitudeMode amplitude() const { return amplitude_; }

  /// Position in all().
  [[nodiscard]] std::size_t index() const;
  [[nodiscard]] std::string name() const;
  [[nodiscard]] bool is_bivariate() const { return !nominal_ && sigma_ == SigmaMode::bivariate; }

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;

 private:
  ModelSpec(bool nominal, SigmaMode sigma, AxisMode axis, AmplitudeMode amplitude)
      : nominal_(nominal), sigma_(sigma), axis_(axis), amplitude_(amplitude) {}

  bool nominal_ = true;
  SigmaMode sigma_ = SigmaMode::univariate;
  AxisMode axis_ = AxisMode::tt;
  AmplitudeMode amplitude_ = AmplitudeMode::nominal;
};

/// Endpoint spread about the sample means (x-bar, y-bar), n-1 denominator.
/// Throws InsufficientDataError for fewer than two endpoints.
[[nodiscard]] double compute_sigma(std::span<const RotatedEndpoint> endpoints, SigmaMode mode);

struct EffectiveStats {
  double sigma_x = 0.0;
  double sigma_y = 0.0;
  double sigma_xy = 0.0;
  double w_e = 0.0;  ///< kEffectiveWidthFactor * sigma of the spec's mode
  double a_e = 0.0;  ///< mean per-trial amplitude
  std::size_t n = 0;
  SigmaMode sigma_mode = SigmaMode::univariate;

  [[nodiscard]] bool degenerate() const { return !(w_e > 0.0); }
};

/// Effective width and amplitude for one group of endpoints measured under
/// `spec.axis()`. Requires a non-nominal spec.
[[nodiscard]] EffectiveStats compute_effective(std::span<const RotatedEndpoint> endpoints,
                                               const ModelSpec& spec,
                                               AmplitudeMeasure measure = AmplitudeMeasure::euclidean);

/// Convenience overload that picks the endpoints for spec.axis() from measured trials.
[[nodiscard]] EffectiveStats compute_effective(std::span<const MeasuredTrial> trials,
                                               const ModelSpec& spec,
                                               AmplitudeMeasure measure = AmplitudeMeasure::euclidean);

/// Index of difficulty in bits.
///
/// Nominal: log2(A/W + 1), `stats` ignored. Effective: log2(amp/W_e + 1) where amp
/// is A or A_e per the spec. Throws DegenerateError when W_e is zero and
/// ValidationError when an effective spec gets no stats.
[[nodiscard]] double id_of(const ModelSpec& spec, const Condition& condition,
                           const EffectiveStats* stats);

}  // namespace fittsnorm
