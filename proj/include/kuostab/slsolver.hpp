#pragma once

#include <vector>

#include "kuostab/profiles.hpp"

namespace kuostab {

/// Phase speed of a neutral problem: a finite c, the compactified
/// coordinate ct = 1/(c - m) with m the midpoint of Ran(U), or c = infinity.
class Speed {
 public:
  enum class Kind { finite, compactified, infinity };

  static Speed finite(double c) { return Speed(Kind::finite, c); }
  static Speed compactified(double ct) { return ct == 0.0 ? infinity() : Speed(Kind::compactified, ct); }
  static Speed infinity() { return Speed(Kind::infinity, 0.0); }

  [[nodiscard]] Kind kind() const { return kind_; }
  /// c for finite speeds, ct for compactified ones, 0 at infinity.
  [[nodiscard]] double value() const { return value_; }

 private:
  Speed(Kind kind, double value) : kind_(kind), value_(value) {}
  Kind kind_;
  double value_;
};

/// -phi'' - q phi = lambda phi with Dirichlet walls, q = (beta - U'')/(U - c).
struct SLProblem {
  FlowProfile profile;
  double beta = 0.0;
  Speed speed = Speed::infinity();

  SLProblem(FlowProfile p, double b, Speed s);

  /// True when c coincides with U_beta and q reduces to K_beta.
  [[nodiscard]] bool removable() const { return removable_; }
  /// The finite phase speed; throws for infinity.
  [[nodiscard]] double c() const;
  /// ct = 1/(c - m); zero at infinity.
  [[nodiscard]] double ctilde() const;

  /// 1/(U(y) - c), continuous through c = infinity.
  [[nodiscard]] double inverse_gap(double y) const;
  /// q(y).
  [[nodiscard]] double potential(double y) const;

 private:
  bool removable_ = false;
};

struct EigenPair {
  int n = 0;
  double lambda = 0.0;
  std::vector<double> grid;
  std::vector<double> phi;
  int nodes = 0;
  bool converged = false;
  double est_error = 0.0;
};

struct EigenvalueResult {
  std::vector<double> lambda;
  std::vector<double> est_error;
  /// Finest number of grid intervals used.
  int intervals = 0;
  /// Raw (not extrapolated) eigenvalues of the finest matrix.
  std::vector<double> raw;
};

/// Eigenvalue n (1-based) of the finite-difference matrix with `intervals`
/// uniform intervals, by Sturm-count bisection.
double fd_eigenvalue(const SLProblem& problem, int n, int intervals);

/// First n_max eigenvalues with Richardson extrapolation over grid doubling.
EigenvalueResult solve_eigenvalues(const SLProblem& problem, int n_max, double tol);

std::vector<double> eigenvalues(const SLProblem& problem, int n_max, double tol);

/// Eigenvalue n with its L2-normalized eigenfunction, phi'(y1) > 0.
EigenPair eigenfunction(const SLProblem& problem, int n, double tol);

/// -integral of |phi|^2/(U - c).
double dlambda_dbeta(const EigenPair& pair, const SLProblem& problem);

/// -integral of (beta - U'')|phi|^2/(U - c)^2.
double dlambda_dc(const EigenPair& pair, const SLProblem& problem);

/// Trapezoid rule on a uniform grid.
double trapezoid(const std::vector<double>& values, double h);

}  // namespace kuostab
