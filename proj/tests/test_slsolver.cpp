#include <cmath>
#include <numbers>

#include "doctest.h"
#include "golden.hpp"
#include "kuostab/closedform.hpp"
#include "kuostab/errors.hpp"
#include "kuostab/profiles.hpp"
#include "kuostab/slsolver.hpp"

using namespace kuostab;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;

double value_at(const EigenPair& p, double y) {
  for (std::size_t i = 0; i < p.grid.size(); ++i) {
    if (std::abs(p.grid[i] - y) < 1e-12) {
      return p.phi[i];
    }
  }
  FAIL("grid point missing");
  return 0.0;
}

double lam(double beta, double c, int n, double tol = 1e-11) {
  return eigenvalues(SLProblem(sinus_profile(), beta, Speed::finite(c)), n, tol).back();
}

}  // namespace

TEST_CASE("speed validation") {
  const FlowProfile s = sinus_profile();
  CHECK_THROWS_AS(SLProblem(s, 0.0, Speed::finite(0.3)), InvalidSpeed);
  CHECK_THROWS_AS(SLProblem(s, 0.3 * kPi2, Speed::finite(0.0)), InvalidSpeed);
  CHECK_THROWS_AS(SLProblem(s, 0.0, Speed::finite(1.0)), InvalidSpeed);
  CHECK_THROWS_AS(SLProblem(s, 0.0, Speed::compactified(3.0)), InvalidSpeed);
  CHECK(SLProblem(s, 0.0, Speed::finite(0.5)).removable());
  CHECK(SLProblem(s, 0.5 * kPi2, Speed::finite(0.0)).removable());
  CHECK_FALSE(SLProblem(s, 0.0, Speed::finite(2.0)).removable());
  CHECK(Speed::compactified(0.0).kind() == Speed::Kind::infinity);
  const SLProblem p(s, 0.0, Speed::compactified(-0.5));
  CHECK(p.c() == doctest::Approx(-1.5));
  CHECK(p.inverse_gap(0.0) == doctest::Approx(1.0 / 2.5));
  CHECK_THROWS_AS((void)SLProblem(s, 0.0, Speed::infinity()).c(), Error);
}

TEST_CASE("closed-form spectra") {
  const FlowProfile s = sinus_profile();
  for (double beta : {-0.4 * kPi2, 0.0, 0.3 * kPi2}) {
    const std::vector<double> reg = eigenvalues(SLProblem(s, beta, Speed::finite(s.u_beta(beta))), 3, 1e-9);
    CHECK(reg[0] == doctest::Approx(-0.75 * kPi2).epsilon(1e-9));
    CHECK(std::abs(reg[1]) < 1e-8);
    CHECK(reg[2] == doctest::Approx(1.25 * kPi2).epsilon(1e-9));
    const std::vector<double> inf = eigenvalues(SLProblem(s, beta, Speed::infinity()), 2, 1e-9);
    CHECK(inf[0] == doctest::Approx(kPi2 / 4.0).epsilon(1e-9));
    CHECK(inf[1] == doctest::Approx(kPi2).epsilon(1e-9));
  }
}

TEST_CASE("golden eigenvalues at c = 2") {
  const EigenvalueResult r = solve_eigenvalues(SLProblem(sinus_profile(), 0.0, Speed::finite(2.0)), 3, 1e-8);
  for (int i = 0; i < 3; ++i) {
    CHECK(r.lambda[i] == doctest::Approx(golden::lambda_beta0_c2[i]).epsilon(1e-9));
    CHECK(r.est_error[i] < 1e-7);
  }
}

TEST_CASE("golden eigenfunction at beta = 0.4 pi^2, c = -0.5") {
  const SLProblem p(sinus_profile(), 0.4 * kPi2, Speed::finite(-0.5));
  const EigenPair e = eigenfunction(p, 1, 1e-8);
  CHECK(e.lambda == doctest::Approx(golden::lambda_b04_cm05).epsilon(1e-9));
  CHECK(e.nodes == 0);
  CHECK(value_at(e, -0.5) == doctest::Approx(golden::phi_b04_cm05[0]).epsilon(1e-6));
  CHECK(value_at(e, 0.0) == doctest::Approx(golden::phi_b04_cm05[1]).epsilon(1e-6));
  CHECK(value_at(e, 0.5) == doctest::Approx(golden::phi_b04_cm05[2]).epsilon(1e-6));
  for (double v : e.phi) {
    CHECK(v >= 0.0);
  }
}

TEST_CASE("eigenfunctions at c = U_beta") {
  const FlowProfile s = sinus_profile();
  const double beta = 0.1 * kPi2;
  const SLProblem p(s, beta, Speed::finite(s.u_beta(beta)));
  const EigenPair e1 = eigenfunction(p, 1, 1e-8);
  const EigenPair e2 = eigenfunction(p, 2, 1e-8);
  double d1 = 0.0;
  double d2 = 0.0;
  for (std::size_t i = 0; i < e1.grid.size(); ++i) {
    d1 = std::max(d1, std::abs(e1.phi[i] - std::cos(kPi * e1.grid[i] / 2.0)));
  }
  for (std::size_t i = 0; i < e2.grid.size(); ++i) {
    d2 = std::max(d2, std::abs(e2.phi[i] - std::sin(kPi * (e2.grid[i] + 1.0))));
  }
  CHECK(d1 < 1e-6);
  CHECK(d2 < 1e-6);
  CHECK(e1.nodes == 0);
  CHECK(e2.nodes == 1);
}

TEST_CASE("ordering, nodes and lower bound") {
  const FlowProfile s = sinus_profile();
  for (double beta : {-0.5 * kPi2, 0.0, 0.5 * kPi2}) {
    for (double c : {-5.0, -0.3, 1.2, 4.0}) {
      const SLProblem p(s, beta, Speed::finite(c));
      const std::vector<double> v = eigenvalues(p, 3, 1e-8);
      CHECK(v[0] < v[1]);
      CHECK(v[1] < v[2]);
      for (int n = 1; n <= 3; ++n) {
        CHECK(v[n - 1] > closedform::lambda_regular(n));
      }
      CHECK(eigenfunction(p, 3, 1e-8).nodes == 2);
    }
  }
}

TEST_CASE("monotone in beta") {
  for (double c : {-2.0, -0.3}) {
    CHECK(lam(-0.2 * kPi2, c, 1, 1e-9) > lam(0.0, c, 1, 1e-9));
    CHECK(lam(0.0, c, 1, 1e-9) > lam(0.2 * kPi2, c, 1, 1e-9));
  }
  for (double c : {1.3, 3.0}) {
    CHECK(lam(-0.2 * kPi2, c, 1, 1e-9) < lam(0.0, c, 1, 1e-9));
    CHECK(lam(0.0, c, 1, 1e-9) < lam(0.2 * kPi2, c, 1, 1e-9));
  }
}

TEST_CASE("derivative in beta") {
  const FlowProfile s = sinus_profile();
  {
    const SLProblem p(s, 0.1, Speed::finite(2.0));
    CHECK(dlambda_dbeta(eigenfunction(p, 1, 1e-8), p) > 0.0);
  }
  {
    const SLProblem p(s, 0.1, Speed::finite(-1.0));
    CHECK(dlambda_dbeta(eigenfunction(p, 1, 1e-8), p) < 0.0);
  }
  const double beta = 0.3 * kPi2;
  const double c = -0.4;
  const SLProblem p(s, beta, Speed::finite(c));
  const double h = 1e-5;
  const double fd = (lam(beta + h, c, 1) - lam(beta - h, c, 1)) / (2.0 * h);
  CHECK(dlambda_dbeta(eigenfunction(p, 1, 1e-10), p) == doctest::Approx(fd).epsilon(1e-4));
}

TEST_CASE("derivative in c") {
  const FlowProfile s = sinus_profile();
  {
    // lambda_1 grows with c on the right of Ran(U) at beta = -pi^2/2
    const SLProblem p(s, -0.5 * kPi2, Speed::finite(1.5));
    CHECK(dlambda_dc(eigenfunction(p, 1, 1e-8), p) > 0.0);
  }
  {
    const SLProblem p(s, 0.5 * kPi2, Speed::finite(-0.5));
    CHECK(dlambda_dc(eigenfunction(p, 1, 1e-8), p) < 0.0);
  }
  const double beta = 0.25 * kPi2;
  const double c = -0.2;
  const SLProblem p(s, beta, Speed::finite(c));
  const double h = 1e-5;
  const double fd = (lam(beta, c + h, 1) - lam(beta, c - h, 1)) / (2.0 * h);
  CHECK(dlambda_dc(eigenfunction(p, 1, 1e-10), p) == doctest::Approx(fd).epsilon(1e-4));
}

TEST_CASE("limits") {
  // c -> infinity: first-order approach with slope (beta + pi^2/4)
  for (double ct : {1e-3, -1e-3}) {
    const double v = eigenvalues(SLProblem(sinus_profile(), 0.0, Speed::compactified(ct)), 1, 1e-9).front();
    CHECK(v - kPi2 / 4.0 == doctest::Approx(ct * kPi2 / 4.0).epsilon(1e-2));
  }
  // c -> 0-: discrepancy to the closed form shrinks
  const double beta = 0.2 * kPi2;
  const double exact = closedform::lambda_c0(beta, 1);
  const double d3 = std::abs(lam(beta, -1e-3, 1, 1e-8) - exact);
  const double d4 = std::abs(lam(beta, -1e-4, 1, 1e-8) - exact);
  CHECK(d4 < d3);
  CHECK(std::abs(lam(0.25 * kPi2, -1e-5, 1, 1e-8) - closedform::lambda_c0(0.25 * kPi2, 1)) < 1e-3);
}

TEST_CASE("trapezoid") {
  CHECK(trapezoid({1.0, 1.0, 1.0}, 0.5) == doctest::Approx(1.0));
  CHECK(trapezoid({0.0, 1.0, 4.0}, 1.0) == doctest::Approx(3.0));
}
