#pragma once

namespace kuostab {

/// A real value that may be the explicit marker +infinity.
///
/// Kept as a tag rather than a floating-point infinity so that divergent
/// branches stay visible and testable.
class ExtendedReal {
 public:
  static ExtendedReal finite(double v) { return ExtendedReal(false, v); }
  static ExtendedReal plus_infinity() { return ExtendedReal(true, 0.0); }

  [[nodiscard]] bool is_infinite() const { return infinite_; }
  [[nodiscard]] bool is_finite() const { return !infinite_; }
  /// Throws if infinite.
  [[nodiscard]] double value() const;

 private:
  ExtendedReal(bool infinite, double v) : infinite_(infinite), value_(v) {}
  bool infinite_;
  double value_;
};

namespace specfun {

/// ln Gamma(x) for x > 0 (Lanczos, g = 7, 9 terms). PoleError at x <= 0 integers.
double ln_gamma(double x);

/// Gamma(x) for any real x that is not a pole, via reflection for x < 1/2.
double gamma_signed(double x);

/// 1/Gamma(x); zero at the poles.
double reciprocal_gamma(double x);

struct HypArgs {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double z = 0.0;
};

/// Gauss 2F1(a, b; c; z) for real parameters and z in [0, 1).
///
/// z <= 1/2 sums the series directly. Above 1/2 the value goes through
/// z -> 1 - z connection (which carries the Euler factor (1-z)^(c-a-b))
/// when c - a - b is not an integer, and through the Euler-transformed
/// series otherwise. Polynomial cases terminate early.
double hyp2f1(const HypArgs& args);

/// Direct power series only. NoConvergence after 10^6 terms.
double hyp2f1_series(double a, double b, double c, double z);

/// (1-z)^(c-a-b) * 2F1(c-a, c-b; c; z), summed directly.
double hyp2f1_euler(double a, double b, double c, double z);

/// 2F1(a, b; c; 1) = Gamma(c)Gamma(c-a-b) / (Gamma(c-a)Gamma(c-b)).
/// DivergesAtOne when c - a - b <= 0.
double gauss_at_one(double a, double b, double c);

/// C_s = integral over [-1, 1] of cos^s(pi y / 2); +infinity for s <= -1.
ExtendedReal cos_power_integral(double s);

}  // namespace specfun
}  // namespace kuostab
