#include <cmath>
#include <vector>

#include "doctest.h"
#include "fittsnorm/descriptive.hpp"

using namespace fittsnorm;

TEST_CASE("mean and sample variance") {
  const std::vector<double> xs = {2, 4, 4, 4, 5, 5, 7, 9};
  CHECK(mean(xs) == doctest::Approx(5.0));
  CHECK(sample_variance(xs) == doctest::Approx(32.0 / 7.0));
  CHECK(sample_sd(xs) == doctest::Approx(std::sqrt(32.0 / 7.0)));
}

TEST_CASE("linear-interpolation quantiles") {
  const std::vector<double> s = {1, 2, 3, 4};
  CHECK(quantile_linear(s, 0.25) == doctest::Approx(1.75));
  CHECK(quantile_linear(s, 0.75) == doctest::Approx(3.25));
  CHECK(quantile_linear(s, 0.0) == 1.0);
  CHECK(quantile_linear(s, 1.0) == 4.0);
  const std::vector<double> one = {7};
  CHECK(quantile_linear(one, 0.5) == 7.0);
}

TEST_CASE("IQR fences are strict") {
  const std::vector<double> v = {160, 100, 110, 120, 130, 140, 150, 170, 280};
  const Fences f = iqr_fences(v, 3.0);
  CHECK(f.q1 == doctest::Approx(120));
  CHECK(f.q3 == doctest::Approx(160));
  CHECK(f.lower == doctest::Approx(0));
  CHECK(f.upper == doctest::Approx(280));
  CHECK_FALSE(f.outside(280));
  CHECK(f.outside(280.001));
  CHECK_FALSE(f.outside(0));
  CHECK(f.outside(-0.001));
}
