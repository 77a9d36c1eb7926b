#include "kuostab/closedform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "kuostab/errors.hpp"

namespace kuostab::closedform {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;

void require_index(int n) {
  if (n < 1) {
    throw Error("eigenvalue index must be >= 1");
  }
}

}  // namespace

double gamma_exponent(double beta) {
  const double disc = 9.0 / 16.0 - beta / kPi2;
  if (!(disc > 0.0)) {
    throw BetaOutOfRange("gamma needs beta < 9 pi^2/16, got " + std::to_string(beta));
  }
  return 0.25 + std::sqrt(disc);
}

double gamma_tilde_exponent(double beta) {
  const double disc = 9.0 / 16.0 + beta / kPi2;
  if (!(disc > 0.0)) {
    throw BetaOutOfRange("gamma_tilde needs beta > -9 pi^2/16, got " + std::to_string(beta));
  }
  return 0.25 + std::sqrt(disc);
}

GammaExponents exponents(double beta) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  GammaExponents e{nan, nan};
  if (9.0 / 16.0 - beta / kPi2 > 0.0) {
    e.gamma = gamma_exponent(beta);
  }
  if (9.0 / 16.0 + beta / kPi2 > 0.0) {
    e.gamma_tilde = gamma_tilde_exponent(beta);
  }
  return e;
}

double lambda_regular(int n) {
  require_index(n);
  return (n * n / 4.0 - 1.0) * kPi2;
}

double lambda_infinity(int n) {
  require_index(n);
  return n * n / 4.0 * kPi2;
}

double lambda_c0(double beta, int n) {
  require_index(n);
  if (beta == 0.5 * kPi2) {
    return lambda_regular(n);
  }
  const double g = gamma_exponent(beta) + (n - 1) / 2.0;
  return (g * g - 1.0) * kPi2;
}

double lambda_c1(double beta, int n) {
  require_index(n);
  if (beta == -0.5 * kPi2) {
    return lambda_regular(n);
  }
  const double g = gamma_tilde_exponent(beta) - 0.5 + (n + 1) / 2;
  return (g * g - 1.0) * kPi2;
}

SnmPoint snm_curve(double gamma) {
  if (!(gamma > 0.5 && gamma < 1.0)) {
    throw GammaOutOfRange("SNM curve needs gamma in (1/2, 1), got " + std::to_string(gamma));
  }
  return {0.0, kPi * std::sqrt(1.0 - gamma * gamma), kPi2 * (-gamma * gamma + 0.5 * gamma + 0.5)};
}

double snm_alpha(double beta) {
  if (!(beta > 0.0 && beta < 0.5 * kPi2)) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  const double g = gamma_exponent(beta);
  return kPi * std::sqrt(1.0 - g * g);
}

EndpointValues lambda_minus_at_endpoints(double beta) {
  if (!(beta >= -0.5 * kPi2 && beta <= 0.5 * kPi2)) {
    throw BetaOutOfRange("lambda_minus_at_endpoints needs |beta| <= pi^2/2");
  }
  EndpointValues v;
  v.at0 = std::max(0.0, -lambda_c0(beta, 1));
  v.at1 = std::max(0.0, -lambda_c1(beta, 1));
  return v;
}

ExtendedReal dlambda1_dc_at_zero(double beta) {
  if (!(beta > 0.0 && beta < 0.5 * kPi2)) {
    throw BetaOutOfRange("dlambda1_dc_at_zero needs beta in (0, pi^2/2)");
  }
  const double g = gamma_exponent(beta);
  if (g <= 0.75) {
    return ExtendedReal::plus_infinity();
  }
  return ExtendedReal::finite(kPi2 * g * (g - 1.0) * (g * g - 0.75) / ((g - 0.25) * (g - 0.75)));
}

EigfunDerivs eigfun_c0_derivs(double beta, int n, double y) {
  if (n != 1 && n != 2) {
    throw UnsupportedIndex("eigfun_c0 supports n = 1, 2 only");
  }
  const double g = 2.0 * gamma_exponent(beta);
  const double k = 0.5 * kPi;
  const double cs = std::cos(k * y);
  const double sn = std::sin(k * y);
  EigfunDerivs d;
  const double f = std::pow(std::max(cs, 0.0), g);
  if (cs <= 0.0) {
    // wall: phi vanishes, derivatives are not needed there
    return d;
  }
  const double df = -g * k * std::pow(cs, g - 1.0) * sn;
  const double d2f = k * k * g * ((g - 1.0) * std::pow(cs, g - 2.0) * sn * sn - f);
  if (n == 1) {
    d.phi = f;
    d.dphi = df;
    d.d2phi = d2f;
  } else {
    d.phi = f * sn;
    d.dphi = df * sn + f * k * cs;
    d.d2phi = d2f * sn + 2.0 * df * k * cs - f * k * k * sn;
  }
  return d;
}

double eigfun_c0(double beta, int n, double y) { return eigfun_c0_derivs(beta, n, y).phi; }

}  // namespace kuostab::closedform
