#include <cmath>
#include <numbers>

#include "doctest.h"
#include "golden.hpp"
#include "kuostab/closedform.hpp"
#include "kuostab/dispersion.hpp"
#include "kuostab/errors.hpp"

using namespace kuostab;

namespace {
constexpr double kPi2 = std::numbers::pi * std::numbers::pi;
}

TEST_CASE("dispersion value against the fixed-step oracle") {
  const cplx d = dispersion(sinus_profile(), 1.0, 0.0, cplx(0.5, 0.5));
  CHECK(d.real() == doctest::Approx(golden::dispersion_re).epsilon(1e-8));
  CHECK(d.imag() == doctest::Approx(golden::dispersion_im).epsilon(1e-8));
}

TEST_CASE("dispersion derivative") {
  const FlowProfile s = sinus_profile();
  const cplx c(0.3, 0.2);
  const double h = 1e-5;
  const DispersionValue v = dispersion_with_derivative(s, 1.2, 0.5, c);
  const cplx fd = (dispersion(s, 1.2, 0.5, c + h) - dispersion(s, 1.2, 0.5, c - h)) / (2.0 * h);
  CHECK(std::abs(v.dd - fd) / std::abs(fd) < 1e-6);
  CHECK(std::abs(v.d - dispersion(s, 1.2, 0.5, c)) < 1e-9 * std::abs(v.d));
}

TEST_CASE("dispersion at real speeds and at the wall value") {
  const FlowProfile s = sinus_profile();
  // c = U_beta with alpha^2 = -lambda_1 is a regular neutral mode
  const double a = std::sqrt(0.75 * kPi2);
  CHECK(std::abs(dispersion(s, a, 0.0, cplx(0.5, 0.0))) < 1e-9);
  // singular neutral mode at c = 0 on the SNM curve
  const double beta = 0.3 * kPi2;
  const double on = closedform::snm_alpha(beta);
  const double d_on = std::abs(dispersion(s, on, beta, cplx(0.0, 0.0)));
  const double d_off = std::abs(dispersion(s, on + 0.5, beta, cplx(0.0, 0.0)));
  CHECK(d_on < 1e-6 * d_off);
}

TEST_CASE("semicircle radius") {
  const FlowProfile s = sinus_profile();
  CHECK(semicircle_radius(s, 1.0, 0.0) == doctest::Approx(0.5));
  CHECK(semicircle_radius(s, 2.0, 4.0) == doctest::Approx(1.0));
  CHECK(std::isinf(semicircle_radius(s, 0.0, 1.0)));
}

TEST_CASE("unstable counts") {
  const FlowProfile s = sinus_profile();
  CHECK(count_unstable(s, std::sqrt(0.9 * 0.75 * kPi2), 0.0) == 1);
  CHECK(count_unstable(s, 3.0, 0.0) == 0);
  CHECK(count_unstable(s, 3.0, 0.3 * kPi2) == 0);
  const double lm0 = closedform::lambda_minus_at_endpoints(0.45 * kPi2).at0;
  CHECK(count_unstable(s, std::sqrt(0.5 * lm0), 0.45 * kPi2) == 0);
  CHECK_THROWS_AS(count_unstable(s, 0.0, 0.0), Error);
}

TEST_CASE("golden unstable mode") {
  const std::optional<Mode> m = find_unstable_mode(sinus_profile(), 1.0, 0.0);
  REQUIRE(m.has_value());
  CHECK(m->c.real() == doctest::Approx(golden::unstable_c_re).epsilon(1e-9));
  CHECK(m->c.imag() == doctest::Approx(golden::unstable_c_im).epsilon(1e-9));
  CHECK(m->kind == ModeKind::unstable);
  const ModeResiduals r = verify_mode_identities(*m);
  CHECK(r.ode < 1e-6);
  CHECK(std::abs(r.identity1) < 1e-6);
  CHECK(std::abs(r.identity2) < 1e-6);
  CHECK(r.h1_slack >= -1e-8);
  CHECK(r.h2_slack >= -1e-8);
  CHECK(std::abs(r.lform) < 1e-5);
  CHECK(r.semicircle_slack > 0.0);
  const QuadraticForm q = quadratic_form(*m);
  CHECK(std::abs(q.via_definition) < 1e-5 * m->integrals.vort);
  CHECK(std::abs(q.via_identity) < 1e-5);
}

TEST_CASE("zero wavenumber mode") {
  const std::optional<Mode> m = find_unstable_mode(sinus_profile(), 0.0, -0.3 * kPi2);
  REQUIRE(m.has_value());
  CHECK(m->c.imag() > 0.0);
  CHECK(m->residuals.ode < 1e-6);
}

TEST_CASE("stable cell has no mode") {
  CHECK_FALSE(find_unstable_mode(sinus_profile(), 3.0, 0.0).has_value());
  CHECK(std::string(to_string(ModeKind::singular_neutral)) == "singular_neutral");
}
