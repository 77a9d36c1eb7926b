#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "kuostab/errors.hpp"
#include "kuostab/specfun.hpp"

using namespace kuostab;
using namespace kuostab::specfun;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("cos_power_integral examples") {
  CHECK(cos_power_integral(0.0).value() == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(cos_power_integral(2.0).value() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(cos_power_integral(1.0).value() == doctest::Approx(4.0 / kPi).epsilon(1e-13));
  CHECK(cos_power_integral(-1.0).is_infinite());
  CHECK(cos_power_integral(-3.0).is_infinite());
  CHECK_THROWS_AS((void)cos_power_integral(-1.0).value(), Error);
}

TEST_CASE("gamma family") {
  CHECK(ln_gamma(0.5) == doctest::Approx(0.5 * std::log(kPi)).epsilon(1e-14));
  CHECK(ln_gamma(10.0) == doctest::Approx(std::log(362880.0)).epsilon(1e-14));
  CHECK(gamma_signed(-0.5) == doctest::Approx(-2.0 * std::sqrt(kPi)).epsilon(1e-13));
  CHECK(gamma_signed(5.0) == doctest::Approx(24.0).epsilon(1e-13));
  CHECK(reciprocal_gamma(-2.0) == 0.0);
  CHECK(reciprocal_gamma(0.0) == 0.0);
  CHECK_THROWS_AS(ln_gamma(0.0), PoleError);
  CHECK_THROWS_AS(gamma_signed(-3.0), PoleError);
}

TEST_CASE("ln_gamma recurrence") {
  for (double x = 0.1; x <= 50.0; x += 0.37) {
    CHECK(std::abs(ln_gamma(x + 1.0) - ln_gamma(x) - std::log(x)) < 1e-12);
  }
}

TEST_CASE("hyp2f1 elementary cases") {
  // polynomial
  const double b = 1.3;
  const double c = 2.2;
  const double z = 0.8;
  const double poly = 1.0 - 2.0 * b * z / c + b * (b + 1.0) * z * z / (c * (c + 1.0));
  CHECK(hyp2f1({-2.0, b, c, z}) == doctest::Approx(poly).epsilon(1e-14));
  // 2F1(1,1;2;z) = -ln(1-z)/z
  for (double x : {0.2, 0.5, 0.7, 0.9}) {
    CHECK(hyp2f1({1.0, 1.0, 2.0, x}) == doctest::Approx(-std::log1p(-x) / x).epsilon(1e-12));
  }
  // 2F1(a,b;b;z) = (1-z)^-a
  CHECK(hyp2f1({0.7, 1.9, 1.9, 0.6}) == doctest::Approx(std::pow(0.4, -0.7)).epsilon(1e-12));
  CHECK(hyp2f1({0.3, 0.4, 1.0, 0.0}) == 1.0);
  CHECK_THROWS_AS(hyp2f1({0.3, 0.4, 1.0, 1.0}), Error);
  CHECK_THROWS_AS(hyp2f1({0.3, 0.4, -2.0, 0.3}), PoleError);
}

TEST_CASE("hyp2f1 direct vs Euler transformation") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> ab(-3.0, 3.0);
  std::uniform_real_distribution<double> cc(0.6, 4.0);
  std::uniform_real_distribution<double> zz(0.05, 0.95);
  int used = 0;
  while (used < 100) {
    const double a = ab(rng);
    const double bb = ab(rng);
    const double c = cc(rng);
    const double z = zz(rng);
    if (c - a - bb <= 0.1) {
      continue;
    }
    ++used;
    const double direct = hyp2f1_series(a, bb, c, z);
    CHECK(hyp2f1_euler(a, bb, c, z) == doctest::Approx(direct).epsilon(1e-10));
    CHECK(hyp2f1({a, bb, c, z}) == doctest::Approx(direct).epsilon(1e-9));
  }
}

TEST_CASE("Gauss summation") {
  // 2F1(a,b;c;1) for c - a - b > 0
  const double v = gauss_at_one(0.5, 0.25, 2.0);
  CHECK(v == doctest::Approx(gamma_signed(2.0) * gamma_signed(1.25) / (gamma_signed(1.5) * gamma_signed(1.75))));
  CHECK(hyp2f1({0.5, 0.25, 2.0, 1.0 - 1e-12}) == doctest::Approx(v).epsilon(1e-9));
  CHECK(std::abs(hyp2f1_series(0.5, 0.25, 2.0, 0.999) - v) < 1e-3 * v);
  CHECK_THROWS_AS(gauss_at_one(1.0, 1.0, 2.0), DivergesAtOne);
  CHECK_THROWS_AS(gauss_at_one(1.0, 1.5, 2.0), DivergesAtOne);
}
