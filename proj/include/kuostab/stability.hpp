#pragma once

#include <vector>

#include "kuostab/dispersion.hpp"

namespace kuostab {

/// Which side of Ran(U) = [0, 1] the phase speed lives on (Sinus flow).
enum class Side { left, right };

struct NMinus {
  int n_minus = 0;
  int n_zero = 0;
};

/// Morse index of the energy operator L_alpha for the Sinus flow.
NMinus n_minus_L_alpha(double alpha, double beta);

struct ProfilePoint {
  double c = 0.0;
  double ctilde = 0.0;
  double lambda1 = 0.0;
  double est_error = 0.0;
  bool closed_form = false;
};

/// lambda_1(beta, c) on a compactified grid of `grid` points plus the
/// near-endpoint ladder, ordered by increasing c. The endpoint (c = 0 or 1)
/// carries the closed-form value.
std::vector<ProfilePoint> lambda_beta_profile(double beta, Side side, int grid, double tol = 1e-8);

struct SideMinimum {
  double lambda = 0.0;
  double c = 0.0;
  bool at_endpoint = false;
};

/// Infimum of lambda_1(beta, .) over one side, endpoint included.
SideMinimum side_minimum(double beta, Side side, double tol, int coarse = 129);

enum class BoundaryCase { endpoint_monotone, interior_hump, zero };

const char* to_string(BoundaryCase kind);

struct BoundaryPoint {
  double beta = 0.0;
  double capital_lambda = 0.0;
  double c_star = 0.0;
  double alpha_lower = 0.0;
  double snm_alpha = 0.0;  // NaN outside (0, pi^2/2)
  BoundaryCase kind = BoundaryCase::zero;
};

/// Lambda_beta = sup of the negative part of lambda_1 over c outside (0, 1).
BoundaryPoint capital_lambda(double beta, double tol);

/// inf over c >= 1 of lambda_1(beta, c).
double beta_minus_gap(double beta, double tol);

/// The root of beta_minus_gap in (-pi^2/2, 0).
double find_beta_minus(double tol);

std::vector<BoundaryPoint> boundary_sweep(const std::vector<double>& betas, double tol, int threads = 0);

struct CensusEntry {
  double c = 0.0;
  int n = 1;
  int signature = 0;
  double dlambda_dc = 0.0;
};

/// Real roots c outside [0, 1] of lambda_n(beta, c) = -alpha^2 with their
/// energy signature sign(-(c - U_beta) d lambda/dc).
std::vector<CensusEntry> neutral_nonresonant_census(double alpha, double beta, double tol = 1e-8);

struct IndexCount {
  double alpha = 0.0;
  double beta = 0.0;
  int n_minus = 0;
  int k_unstable = 0;
  int k_i_nonpos = 0;
  bool holds = false;
};

IndexCount index_counts(double alpha, double beta);

}  // namespace kuostab
