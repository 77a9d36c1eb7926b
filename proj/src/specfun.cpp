#include "kuostab/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "kuostab/errors.hpp"

namespace kuostab {

double ExtendedReal::value() const {
  if (infinite_) {
    throw Error("ExtendedReal: value() on +infinity");
  }
  return value_;
}

namespace specfun {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxTerms = 1000000;
constexpr double kSeriesTol = 1e-16;

// Lanczos coefficients for g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,   676.5203681218851,     -1259.1392167224028,
    771.32342877765313,    -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,  9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::nearbyint(x); }

double lanczos_sum(double x) {
  // x is the shifted argument (x - 1 in the usual notation)
  double sum = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    sum += kLanczos[i] / (x + static_cast<double>(i));
  }
  return sum;
}

// Smallest non-positive integer n at which the series terminates because
// (p)_n vanishes, or -1 when p is not a non-positive integer.
long terminating_degree(double p) {
  if (is_nonpositive_integer(p)) {
    return static_cast<long>(-p);
  }
  return -1;
}

bool near_integer(double x, double tol) { return std::abs(x - std::nearbyint(x)) < tol; }

}  // namespace

double ln_gamma(double x) {
  if (is_nonpositive_integer(x)) {
    throw PoleError("ln_gamma: pole at " + std::to_string(x));
  }
  if (x < 0.5) {
    // only |Gamma| is meaningful here
    return std::log(kPi / std::abs(std::sin(kPi * x))) - ln_gamma(1.0 - x);
  }
  const double xm = x - 1.0;
  const double t = xm + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (xm + 0.5) * std::log(t) - t + std::log(lanczos_sum(xm));
}

double gamma_signed(double x) {
  if (is_nonpositive_integer(x)) {
    throw PoleError("gamma: pole at " + std::to_string(x));
  }
  if (x < 0.5) {
    return kPi / (std::sin(kPi * x) * gamma_signed(1.0 - x));
  }
  return std::exp(ln_gamma(x));
}

double reciprocal_gamma(double x) {
  if (is_nonpositive_integer(x)) {
    return 0.0;
  }
  return 1.0 / gamma_signed(x);
}

double hyp2f1_series(double a, double b, double c, double z) {
  const long na = terminating_degree(a);
  const long nb = terminating_degree(b);
  long stop = -1;
  if (na >= 0 && nb >= 0) {
    stop = std::min(na, nb);
  } else if (na >= 0) {
    stop = na;
  } else if (nb >= 0) {
    stop = nb;
  }
  const long nc = terminating_degree(c);
  if (nc >= 0 && (stop < 0 || stop >= nc + 1)) {
    throw PoleError("hyp2f1: c is a non-positive integer reached by the series");
  }
  double term = 1.0;
  double sum = 1.0;
  for (long n = 0; n < kMaxTerms; ++n) {
    if (stop >= 0 && n >= stop) {
      return sum;
    }
    const double dn = static_cast<double>(n);
    term *= (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)) * z;
    sum += term;
    if (term == 0.0) {
      return sum;
    }
    if (std::abs(term) <= kSeriesTol * std::abs(sum) && n > 2) {
      return sum;
    }
  }
  throw NoConvergence("hyp2f1: series did not converge within 10^6 terms");
}

double hyp2f1_euler(double a, double b, double c, double z) {
  return std::pow(1.0 - z, c - a - b) * hyp2f1_series(c - a, c - b, c, z);
}

double hyp2f1(const HypArgs& args) {
  const auto [a, b, c, z] = args;
  if (!(z >= 0.0 && z < 1.0)) {
    throw Error("hyp2f1: z must lie in [0, 1)");
  }
  if (is_nonpositive_integer(c) && terminating_degree(a) < 0 && terminating_degree(b) < 0) {
    throw PoleError("hyp2f1: c is a non-positive integer");
  }
  if (z == 0.0) {
    return 1.0;
  }
  const bool polynomial = terminating_degree(a) >= 0 || terminating_degree(b) >= 0;
  if (z <= 0.5 || polynomial) {
    return hyp2f1_series(a, b, c, z);
  }
  const double s = c - a - b;
  if (!near_integer(s, 1e-6)) {
    // 2F1(a,b;c;z) = A 2F1(a,b;a+b-c+1;1-z) + B (1-z)^s 2F1(c-a,c-b;s+1;1-z)
    const double w = 1.0 - z;
    const double gc = gamma_signed(c);
    const double first = gc * gamma_signed(s) * reciprocal_gamma(c - a) * reciprocal_gamma(c - b);
    const double second = gc * gamma_signed(-s) * reciprocal_gamma(a) * reciprocal_gamma(b);
    double value = 0.0;
    if (first != 0.0) {
      value += first * hyp2f1_series(a, b, 1.0 - s, w);
    }
    if (second != 0.0) {
      value += second * std::pow(w, s) * hyp2f1_series(c - a, c - b, s + 1.0, w);
    }
    return value;
  }
  return hyp2f1_euler(a, b, c, z);
}

double gauss_at_one(double a, double b, double c) {
  const double s = c - a - b;
  if (!(s > 0.0)) {
    throw DivergesAtOne("2F1(a,b;c;1) diverges for c - a - b <= 0");
  }
  if (is_nonpositive_integer(c)) {
    throw PoleError("gauss_at_one: c is a non-positive integer");
  }
  if (a == 0.0 || b == 0.0) {
    return 1.0;
  }
  return gamma_signed(c) * gamma_signed(s) * reciprocal_gamma(c - a) * reciprocal_gamma(c - b);
}

ExtendedReal cos_power_integral(double s) {
  if (s <= -1.0) {
    return ExtendedReal::plus_infinity();
  }
  const double log_ratio = ln_gamma(0.5 * (s + 1.0)) - ln_gamma(0.5 * s + 1.0);
  return ExtendedReal::finite(2.0 / std::sqrt(kPi) * std::exp(log_ratio));
}

}  // namespace specfun
}  // namespace kuostab
