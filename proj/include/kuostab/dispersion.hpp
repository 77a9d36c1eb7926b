#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "kuostab/profiles.hpp"

namespace kuostab {

using cplx = std::complex<double>;

enum class ModeKind { unstable, regular_neutral, singular_neutral, nonresonant_neutral };

const char* to_string(ModeKind kind);

/// Integrals of the L2-normalized eigenfunction collected during integration.
struct ModeIntegrals {
  double norm = 0.0;         // |phi|^2 before normalization
  double weighted = 0.0;     // (beta - U'')/|U - c|^2 |phi|^2
  double weighted_abs = 0.0; // |beta - U''|/|U - c|^2 |phi|^2
  double shifted = 0.0;      // (beta - U'')(U - U_beta)/|U - c|^2 |phi|^2
  double grad = 0.0;         // |phi'|^2
  double curv = 0.0;         // |phi''|^2
  double k_weighted = 0.0;   // K_beta |phi|^2
  double vort = 0.0;         // |omega|^2/K_beta with omega = -phi'' + alpha^2 phi
  double k_sup = 0.0;        // sup of K_beta
};

struct ModeResiduals {
  double ode = 0.0;
  double identity2 = 0.0;
  double identity1 = 0.0;
  double h1_slack = 0.0;
  double h2_slack = 0.0;
  double lform = 0.0;
  double semicircle_slack = 0.0;
};

struct Mode {
  cplx c;
  double alpha = 0.0;
  double beta = 0.0;
  double u_beta = 0.0;
  double u_min = 0.0;
  double u_max = 0.0;
  std::vector<double> grid;
  std::vector<cplx> phi;
  ModeKind kind = ModeKind::unstable;
  ModeIntegrals integrals;
  ModeResiduals residuals;
};

struct DispersionValue {
  cplx d;
  cplx dd;  // derivative in c
};

/// D(c) = phi(y2) for phi'' = (alpha^2 - q) phi, phi(y1) = 0, phi'(y1) = 1.
cplx dispersion(const FlowProfile& profile, double alpha, double beta, cplx c);

/// D(c) together with dD/dc from the variational equation.
DispersionValue dispersion_with_derivative(const FlowProfile& profile, double alpha, double beta, cplx c);

struct ContourOptions {
  double eps = 1e-4;
  double margin = 0.1;
};

struct ContourResult {
  int count = 0;
  double winding = 0.0;
  int evaluations = 0;
};

/// Radius of the semicircle confining unstable phase speeds.
double semicircle_radius(const FlowProfile& profile, double alpha, double beta);

/// Winding number of D around the box above the real axis.
/// ContourAmbiguous when a complex root lies within 10 eps of the contour.
ContourResult unstable_winding(const FlowProfile& profile, double alpha, double beta, const ContourOptions& opt = {});

int count_unstable(const FlowProfile& profile, double alpha, double beta);

/// Integrates the mode at a known root c and fills integrals and residuals.
Mode build_mode(const FlowProfile& profile, double alpha, double beta, cplx c, ModeKind kind);

std::optional<Mode> find_unstable_mode(const FlowProfile& profile, double alpha, double beta);

ModeResiduals verify_mode_identities(const Mode& mode);

struct QuadraticForm {
  cplx via_identity;
  double via_definition = 0.0;
};

QuadraticForm quadratic_form(const Mode& mode);

}  // namespace kuostab
