#include "fittsnorm/effective.hpp"

#include <cmath>
#include <vector>

#include "fittsnorm/error.hpp"

namespace fittsnorm {

std::string_view to_string(SigmaMode mode) {
  return mode == SigmaMode::univariate ? "x" : "xy";
}

std::string_view to_string(AmplitudeMode mode) {
  return mode == AmplitudeMode::nominal ? "nominal" : "effective";
}

std::optional<SigmaMode> parse_sigma_mode(std::string_view text) {
  if (text == "x" || text == "univariate") return SigmaMode::univariate;
  if (text == "xy" || text == "bivariate") return SigmaMode::bivariate;
  return std::nullopt;
}

std::optional<AmplitudeMode> parse_amplitude_mode(std::string_view text) {
  if (text == "nominal") return AmplitudeMode::nominal;
  if (text == "effective" || text == "ae") return AmplitudeMode::effective;
  return std::nullopt;
}

ModelSpec ModelSpec::nominal() {
  return ModelSpec(true, SigmaMode::univariate, AxisMode::tt, AmplitudeMode::nominal);
}

ModelSpec ModelSpec::effective(SigmaMode sigma, AxisMode axis, AmplitudeMode amplitude) {
  return ModelSpec(false, sigma, axis, amplitude);
}

const std::array<ModelSpec, ModelSpec::kCount>& ModelSpec::all() {
  constexpr SigmaMode univariate = SigmaMode::univariate;
  constexpr SigmaMode bivariate = SigmaMode::bivariate;
  static const std::array<ModelSpec, kCount> specs = {
      ModelSpec::nominal(),
      ModelSpec::effective(univariate, AxisMode::tt, AmplitudeMode::nominal),
      ModelSpec::effective(univariate, AxisMode::ct, AmplitudeMode::nominal),
      ModelSpec::effective(bivariate, AxisMode::tt, AmplitudeMode::nominal),
      ModelSpec::effective(bivariate, AxisMode::ct, AmplitudeMode::nominal),
      ModelSpec::effective(univariate, AxisMode::tt, AmplitudeMode::effective),
      ModelSpec::effective(univariate, AxisMode::ct, AmplitudeMode::effective),
      ModelSpec::effective(bivariate, AxisMode::tt, AmplitudeMode::effective),
      ModelSpec::effective(bivariate, AxisMode::ct, AmplitudeMode::effective),
  };
  return specs;
}

std::size_t ModelSpec::index() const {
  if (nominal_) return 0;
  std::size_t i = 1;
  if (sigma_ == SigmaMode::bivariate) i += 2;
  if (axis_ == AxisMode::ct) i += 1;
  if (amplitude_ == AmplitudeMode::effective) i += 4;
  return i;
}

std::string ModelSpec::name() const {
  if (nominal_) return "nominal";
  std::string out(to_string(sigma_));
  out += '-';
  out += to_string(axis_);
  if (amplitude_ == AmplitudeMode::effective) out += "-ae";
  return out;
}

std::optional<ModelSpec> ModelSpec::from_name(std::string_view name) {
  for (const ModelSpec& s : all()) {
    if (s.name() == name) return s;
  }
  return std::nullopt;
}

double compute_sigma(std::span<const RotatedEndpoint> endpoints, SigmaMode mode) {
  const std::size_t n = endpoints.size();
  if (n < 2) throw InsufficientDataError("sigma needs at least two endpoints");
  double mx = 0.0;
  double my = 0.0;
  for (const RotatedEndpoint& e : endpoints) {
    mx += e.x;
    my += e.y;
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double ss = 0.0;
  for (const RotatedEndpoint& e : endpoints) {
    ss += (e.x - mx) * (e.x - mx);
    if (mode == SigmaMode::bivariate) ss += (e.y - my) * (e.y - my);
  }
  return std::sqrt(ss / static_cast<double>(n - 1));
}

namespace {

double orthogonal_sigma(std::span<const RotatedEndpoint> endpoints) {
  double my = 0.0;
  for (const RotatedEndpoint& e : endpoints) my += e.y;
  my /= static_cast<double>(endpoints.size());
  double ss = 0.0;
  for (const RotatedEndpoint& e : endpoints) ss += (e.y - my) * (e.y - my);
  return std::sqrt(ss / static_cast<double>(endpoints.size() - 1));
}

}  // namespace

EffectiveStats compute_effective(std::span<const RotatedEndpoint> endpoints, const ModelSpec& spec,
                                 AmplitudeMeasure measure) {
  if (spec.is_nominal()) throw ValidationError("effective statistics need a non-nominal spec");
  EffectiveStats st;
  st.n = endpoints.size();
  st.sigma_x = compute_sigma(endpoints, SigmaMode::univariate);
  st.sigma_xy = compute_sigma(endpoints, SigmaMode::bivariate);
  st.sigma_y = orthogonal_sigma(endpoints);
  st.sigma_mode = spec.sigma();
  st.w_e = kEffectiveWidthFactor *
           (spec.sigma() == SigmaMode::univariate ? st.sigma_x : st.sigma_xy);
  double amp = 0.0;
  for (const RotatedEndpoint& e : endpoints) {
    amp += measure == AmplitudeMeasure::euclidean ? e.trial_amplitude_px
                                                  : e.projected_amplitude_px();
  }
  st.a_e = amp / static_cast<double>(st.n);
  return st;
}

EffectiveStats compute_effective(std::span<const MeasuredTrial> trials, const ModelSpec& spec,
                                 AmplitudeMeasure measure) {
  std::vector<RotatedEndpoint> endpoints;
  endpoints.reserve(trials.size());
  for (const MeasuredTrial& t : trials) endpoints.push_back(t.endpoint(spec.axis()));
  return compute_effective(endpoints, spec, measure);
}

double id_of(const ModelSpec& spec, const Condition& condition, const EffectiveStats* stats) {
  if (spec.is_nominal()) return condition.nominal_id();
  if (stats == nullptr) throw ValidationError("effective ID requires effective statistics");
  if (stats->degenerate()) {
    throw DegenerateError("effective width is zero (all endpoints identical)");
  }
  const double amp =
      spec.amplitude() == AmplitudeMode::nominal ? condition.amplitude_px : stats->a_e;
  return std::log2(amp / stats->w_e + 1.0);
}

}  // namespace fittsnorm
