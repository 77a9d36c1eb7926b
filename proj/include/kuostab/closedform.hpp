#pragma once

#include "kuostab/specfun.hpp"

namespace kuostab::closedform {

/// Exponents of the Sinus-flow eigenfunctions at c = 0 and c = 1.
struct GammaExponents {
  double gamma = 0.0;        // valid for beta < 9 pi^2/16
  double gamma_tilde = 0.0;  // valid for beta > -9 pi^2/16
};

/// gamma = 1/4 + sqrt(9/16 - beta/pi^2). BetaOutOfRange for beta >= 9 pi^2/16.
double gamma_exponent(double beta);
/// gamma_tilde = 1/4 + sqrt(9/16 + beta/pi^2). BetaOutOfRange for beta <= -9 pi^2/16.
double gamma_tilde_exponent(double beta);
/// Both exponents; the invalid one is NaN.
GammaExponents exponents(double beta);

/// (n^2/4 - 1) pi^2, the spectrum at c = U_beta.
double lambda_regular(int n);

/// n^2 pi^2/4, the limit c -> +-infinity.
double lambda_infinity(int n);

/// ((gamma + (n-1)/2)^2 - 1) pi^2. At beta = pi^2/2 (c = 0 = U_beta) the
/// regular value is returned instead.
double lambda_c0(double beta, int n);

/// ((gamma_tilde - 1/2 + ceil(n/2))^2 - 1) pi^2. At beta = -pi^2/2 (c = 1 = U_beta)
/// the regular value is returned instead.
double lambda_c1(double beta, int n);

struct SnmPoint {
  double c = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
};

/// The singular neutral mode curve at c = 0, gamma in (1/2, 1).
SnmPoint snm_curve(double gamma);

/// pi sqrt(1 - gamma^2) for beta in (0, pi^2/2), else NaN.
double snm_alpha(double beta);

struct EndpointValues {
  double at0 = 0.0;
  double at1 = 0.0;
};

/// Negative part of lambda_1 at c = 0 and c = 1.
EndpointValues lambda_minus_at_endpoints(double beta);

/// One-sided derivative of lambda_1(beta, c) in c at c = 0 from the left.
ExtendedReal dlambda1_dc_at_zero(double beta);

/// Unnormalized eigenfunction at c = 0 for n = 1, 2. UnsupportedIndex otherwise.
double eigfun_c0(double beta, int n, double y);

/// First and second y-derivatives of eigfun_c0 (for residual checks).
struct EigfunDerivs {
  double phi = 0.0;
  double dphi = 0.0;
  double d2phi = 0.0;
};
EigfunDerivs eigfun_c0_derivs(double beta, int n, double y);

}  // namespace kuostab::closedform
