#pragma once

#include <functional>
#include <optional>
#include <string>

namespace kuostab {

using RealFn = std::function<double(double)>;

/// An analytic shear profile U(y) on the channel [y1, y2].
///
/// Profiles are closed-form function bundles: the eigenvalue machinery needs
/// U and its first three derivatives at arbitrary points. Instances are
/// immutable once built and may be shared between threads.
struct FlowProfile {
  std::string name;
  double y1 = 0.0;
  double y2 = 0.0;
  RealFn u;
  RealFn du;
  RealFn d2u;
  RealFn d3u;
  double u_min = 0.0;
  double u_max = 0.0;
  double upp_min = 0.0;
  double upp_max = 0.0;
  /// beta -> U_beta for beta in Ran(U'').
  RealFn u_beta;
  /// Optional closed form of K_beta(y); takes (beta, y).
  std::function<double(double, double)> k_beta_exact;

  [[nodiscard]] double length() const { return y2 - y1; }
  [[nodiscard]] double u_mid() const { return 0.5 * (u_min + u_max); }

  /// K_beta(y) = (beta - U''(y)) / (U(y) - U_beta).
  ///
  /// Uses the closed form when the profile has one. Otherwise the ratio is
  /// evaluated directly, and within 1e-10 of the removable singularity
  /// U = U_beta by the limit -U'''/U' (or by a symmetric offset average
  /// when U' vanishes as well).
  [[nodiscard]] double k_beta(double beta, double y) const;

  /// Ratio (beta - U'')/(U - U_beta) without any special handling.
  [[nodiscard]] double k_beta_ratio(double beta, double y) const;

  /// Throws BetaOutOfRange unless upp_min <= beta <= upp_max.
  void require_beta_in_range(double beta) const;
};

/// U(y) = (1 + cos(pi y))/2 on [-1, 1].
FlowProfile sinus_profile();

/// U(y) = tanh(y) on [-half_width, half_width].
///
/// half_width must keep |tanh| below 1/sqrt(3) so that U'' = g(U) with g
/// strictly decreasing, which is what puts the profile in class K+.
FlowProfile tanh_profile(double half_width = 0.6);

/// Look up a built-in profile by name ("sinus", "tanh").
std::optional<FlowProfile> profile_by_name(const std::string& name);

struct ClassKPlusReport {
  double u_beta = 0.0;
  double k_min = 0.0;
  double k_max = 0.0;
  bool ok = false;
};

/// Samples K_beta on a uniform grid of n_samples points.
ClassKPlusReport check_class_k_plus(const FlowProfile& profile, double beta, int n_samples);

}  // namespace kuostab
