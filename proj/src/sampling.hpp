#pragma once

#include <optional>
#include <vector>

#include "kuostab/stability.hpp"

namespace kuostab {

struct SidePoint {
  double x = 0.0;  // log10 of the distance to the endpoint
  double c = 0.0;
  double lambda = 0.0;
  double est_error = 0.0;
  std::vector<double> all;  // lambda_1 .. lambda_nmax
};

/// Samples lambda_n(beta, c) on one side of [0, 1] for the Sinus flow.
class SideSampler {
 public:
  SideSampler(double beta, Side side, double tol, int n_max = 1);

  [[nodiscard]] double endpoint() const { return side_ == Side::left ? 0.0 : 1.0; }
  /// Closed-form lambda_1 at the endpoint.
  [[nodiscard]] double endpoint_value() const;
  [[nodiscard]] double c_at_distance(double d) const;

  /// nullopt when the solver does not converge there.
  [[nodiscard]] std::optional<SidePoint> at_distance(double d) const;
  [[nodiscard]] std::optional<SidePoint> at_ctilde(double ct) const;

  /// Lowest sample refined by golden-section search in x between its
  /// neighbours. `pts` must be sorted by x and non-empty.
  [[nodiscard]] SidePoint refine_minimum(const std::vector<SidePoint>& pts) const;

  /// Evaluates all points concurrently; result sorted by x, failures dropped.
  [[nodiscard]] std::vector<SidePoint> sample(const std::vector<double>& ctildes,
                                              const std::vector<double>& distances) const;

 private:
  [[nodiscard]] std::optional<SidePoint> solve(double c, double ct, bool compact) const;

  double beta_;
  Side side_;
  double tol_;
  int n_max_;
};

namespace sampling {

/// Interior points of the compactified grid of `points` values on one side,
/// without the endpoint and without infinity.
std::vector<double> compact_grid(Side side, int points);

/// Distances 10^-k for k from k_first to k_last in steps of 1/per_decade.
std::vector<double> ladder(double k_first, double k_last, int per_decade);

}  // namespace sampling
}  // namespace kuostab
