#include "fittsnorm/normality.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "detail/parallel.hpp"
#include "fittsnorm/distributions.hpp"
#include "fittsnorm/error.hpp"

namespace fittsnorm {

std::string_view to_string(NormalityTest test) {
  return test == NormalityTest::shapiro_wilk ? "shapiro-wilk" : "henze-zirkler";
}

namespace {

template <std::size_t N>
double poly(const std::array<double, N>& c, double x) {
  double r = 0.0;
  for (std::size_t i = N; i-- > 0;) r = r * x + c[i];
  return r;
}

/// Half of the Royston weights, a_1..a_{n/2}, all positive.
std::vector<double> sw_weights(std::size_t n) {
  static constexpr std::array<double, 6> c1 = {0.0, 0.221157, -0.147981, -2.07119, 4.434685, -2.706056};
  static constexpr std::array<double, 6> c2 = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
  const std::size_t half = n / 2;
  std::vector<double> a(half);
  if (n == 3) {
    a[0] = std::sqrt(0.5);
    return a;
  }
  const double an = static_cast<double>(n);
  std::vector<double> m(half);
  double summ2 = 0.0;
  for (std::size_t i = 0; i < half; ++i) {
    m[i] = normal_quantile((static_cast<double>(i + 1) - 0.375) / (an + 0.25));
    summ2 += m[i] * m[i];
  }
  summ2 *= 2.0;
  const double ssumm2 = std::sqrt(summ2);
  const double rsn = 1.0 / std::sqrt(an);
  const double a1 = poly(c1, rsn) - m[0] / ssumm2;
  std::size_t first = 1;
  double fac = 0.0;
  if (n > 5) {
    const double a2 = -m[1] / ssumm2 + poly(c2, rsn);
    fac = std::sqrt((summ2 - 2.0 * m[0] * m[0] - 2.0 * m[1] * m[1]) /
                    (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
    a[1] = a2;
    first = 2;
  } else {
    fac = std::sqrt((summ2 - 2.0 * m[0] * m[0]) / (1.0 - 2.0 * a1 * a1));
  }
  a[0] = a1;
  for (std::size_t i = first; i < half; ++i) a[i] = -m[i] / fac;
  return a;
}

double sw_p_value(double w, std::size_t n) {
  static constexpr std::array<double, 2> g = {-2.273, 0.459};
  static constexpr std::array<double, 4> c3 = {0.544, -0.39978, 0.025054, -6.714e-4};
  static constexpr std::array<double, 4> c4 = {1.3822, -0.77857, 0.062767, -0.0020322};
  static constexpr std::array<double, 4> c5 = {-1.5861, -0.31082, -0.083751, 0.0038915};
  static constexpr std::array<double, 3> c6 = {-0.4803, -0.082676, 0.0030302};
  if (n == 3) {
    const double pw = 6.0 / std::numbers::pi * (std::asin(std::sqrt(w)) - std::numbers::pi / 3.0);
    return std::clamp(pw, 0.0, 1.0);
  }
  const double an = static_cast<double>(n);
  double y = std::log(1.0 - w);
  double m = 0.0;
  double s = 0.0;
  if (n <= 11) {
    const double gamma = poly(g, an);
    if (y >= gamma) return 1e-99;
    y = -std::log(gamma - y);
    m = poly(c3, an);
    s = std::exp(poly(c4, an));
  } else {
    const double xx = std::log(an);
    m = poly(c5, xx);
    s = std::exp(poly(c6, xx));
  }
  return normal_sf(y, m, s);
}

}  // namespace

NormalityResult shapiro_wilk(std::span<const double> xs, double alpha) {
  const std::size_t n = xs.size();
  if (n < 3) throw InsufficientDataError("Shapiro-Wilk needs at least 3 values");
  if (n > 5000) throw ValidationError("Shapiro-Wilk supports at most 5000 values");
  std::vector<double> x(xs.begin(), xs.end());
  std::sort(x.begin(), x.end());
  if (!(x.back() - x.front() > 1e-19 * std::max(1.0, std::fabs(x.back())))) {
    throw DegenerateError("Shapiro-Wilk input has zero range");
  }
  const std::vector<double> a = sw_weights(n);
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);
  double ssq = 0.0;
  for (double v : x) ssq += (v - mean) * (v - mean);
  double num = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) num += a[i] * (x[n - 1 - i] - x[i]);
  double w = num * num / ssq;
  w = std::min(w, 1.0);

  NormalityResult r;
  r.test = NormalityTest::shapiro_wilk;
  r.statistic = w;
  r.n = n;
  r.p_value = std::clamp(sw_p_value(w, n), 0.0, 1.0);
  r.passed = r.p_value > alpha;
  return r;
}

NormalityResult henze_zirkler(std::span<const Point> points, double alpha) {
  const std::size_t n = points.size();
  if (n < 3) throw InsufficientDataError("Henze-Zirkler needs at least 3 points");
  const double nd = static_cast<double>(n);
  double mx = 0.0;
  double my = 0.0;
  for (const Point& p : points) {
    mx += p.x;
    my += p.y;
  }
  mx /= nd;
  my /= nd;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const Point& p : points) {
    sxx += (p.x - mx) * (p.x - mx);
    sxy += (p.x - mx) * (p.y - my);
    syy += (p.y - my) * (p.y - my);
  }
  sxx /= nd;
  sxy /= nd;
  syy /= nd;
  const double det = sxx * syy - sxy * sxy;
  if (!(det > 1e-12 * std::max(sxx * syy, 1e-300))) {
    throw DegenerateError("Henze-Zirkler covariance is singular");
  }
  const double ixx = syy / det;
  const double ixy = -sxy / det;
  const double iyy = sxx / det;
  auto mahal = [&](double dx, double dy) { return dx * dx * ixx + 2.0 * dx * dy * ixy + dy * dy * iyy; };

  constexpr double p = 2.0;
  const double beta = (1.0 / std::numbers::sqrt2) * std::pow((2.0 * p + 1.0) / 4.0, 1.0 / (p + 4.0)) *
                      std::pow(nd, 1.0 / (p + 4.0));
  const double b2 = beta * beta;

  double pair_sum = 0.0;
  double single_sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double dxj = points[j].x - mx;
    const double dyj = points[j].y - my;
    single_sum += std::exp(-b2 / (2.0 * (1.0 + b2)) * mahal(dxj, dyj));
    for (std::size_t k = 0; k < n; ++k) {
      pair_sum += std::exp(-b2 / 2.0 * mahal(points[j].x - points[k].x, points[j].y - points[k].y));
    }
  }
  const double hz = nd * (pair_sum / (nd * nd) -
                          2.0 * std::pow(1.0 + b2, -p / 2.0) * single_sum / nd +
                          std::pow(1.0 + 2.0 * b2, -p / 2.0));

  const double b4 = b2 * b2;
  const double b8 = b4 * b4;
  const double wb = (1.0 + b2) * (1.0 + 3.0 * b2);
  const double a = 1.0 + 2.0 * b2;
  const double mu = 1.0 - std::pow(a, -p / 2.0) * (1.0 + p * b2 / a + p * (p + 2.0) * b4 / (2.0 * a * a));
  const double si2 =
      2.0 * std::pow(1.0 + 4.0 * b2, -p / 2.0) +
      2.0 * std::pow(a, -p) * (1.0 + 2.0 * p * b4 / (a * a) + 3.0 * p * (p + 2.0) * b8 / (4.0 * std::pow(a, 4.0))) -
      4.0 * std::pow(wb, -p / 2.0) * (1.0 + 3.0 * p * b4 / (2.0 * wb) + p * (p + 2.0) * b8 / (2.0 * wb * wb));
  const double pmu = std::log(std::sqrt(mu * mu * mu * mu / (si2 + mu * mu)));
  const double psi = std::sqrt(std::log((si2 + mu * mu) / (mu * mu)));

  NormalityResult r;
  r.test = NormalityTest::henze_zirkler;
  r.statistic = hz;
  r.n = n;
  r.p_value = std::clamp(lognormal_sf(hz, pmu, psi), 0.0, 1.0);
  r.passed = r.p_value > alpha;
  return r;
}

std::optional<double> PassCount::pass_pct() const {
  if (tests == 0) return std::nullopt;
  return 100.0 * static_cast<double>(passed) / static_cast<double>(tests);
}

namespace {

struct GroupTests {
  Bias bias = Bias::neutral;
  bool one_d_passed = false;
  bool two_d_passed = false;
  bool one_d_degenerate = false;
  bool two_d_degenerate = false;
  std::vector<std::string> warnings;
};

}  // namespace

PassRateReport aggregate_pass_rates(const MeasuredDataset& dataset, AxisMode axis, double alpha,
                                    std::size_t max_workers) {
  std::vector<const std::pair<const GroupKey, std::vector<MeasuredTrial>>*> groups;
  for (const auto& entry : dataset.groups()) groups.push_back(&entry);
  std::vector<GroupTests> results(groups.size());

  detail::parallel_for(
      groups.size(),
      [&](std::size_t i) {
        const auto& [key, trials] = *groups[i];
        GroupTests& g = results[i];
        g.bias = key.bias;
        std::vector<double> xs;
        std::vector<Point> pts;
        for (const MeasuredTrial& t : trials) {
          const RotatedEndpoint& e = t.endpoint(axis);
          xs.push_back(e.x);
          pts.push_back({e.x, e.y});
        }
        try {
          g.one_d_passed = shapiro_wilk(xs, alpha).passed;
        } catch (const Error& e) {
          g.one_d_degenerate = true;
          g.warnings.push_back(describe(key) + ": 1D test not run (" + e.what() + ")");
        }
        try {
          g.two_d_passed = henze_zirkler(pts, alpha).passed;
        } catch (const Error& e) {
          g.two_d_degenerate = true;
          g.warnings.push_back(describe(key) + ": 2D test not run (" + e.what() + ")");
        }
      },
      max_workers);

  PassRateReport report;
  for (std::size_t b = 0; b < kAllBiases.size(); ++b) report.per_bias[b].bias = kAllBiases[b];
  for (GroupTests& g : results) {
    BiasPassRates& rates = report.per_bias[static_cast<std::size_t>(g.bias)];
    ++rates.one_d.tests;
    ++rates.two_d.tests;
    rates.one_d.passed += g.one_d_passed ? 1 : 0;
    rates.two_d.passed += g.two_d_passed ? 1 : 0;
    rates.one_d.degenerate += g.one_d_degenerate ? 1 : 0;
    rates.two_d.degenerate += g.two_d_degenerate ? 1 : 0;
    for (std::string& w : g.warnings) report.warnings.push_back(std::move(w));
  }
  return report;
}

}  // namespace fittsnorm
