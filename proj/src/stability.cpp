#include "kuostab/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "kuostab/closedform.hpp"
#include "kuostab/errors.hpp"
#include "kuostab/parallel.hpp"
#include "kuostab/slsolver.hpp"
#include "sampling.hpp"

namespace kuostab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;

}  // namespace

const char* to_string(BoundaryCase kind) {
  switch (kind) {
    case BoundaryCase::endpoint_monotone:
      return "endpoint_monotone";
    case BoundaryCase::interior_hump:
      return "interior_hump";
    case BoundaryCase::zero:
      return "zero";
  }
  return "unknown";
}

NMinus n_minus_L_alpha(double alpha, double /*beta*/) {
  NMinus r;
  const double a2 = alpha * alpha;
  for (int k = 1;; ++k) {
    const double level = k * k * kPi2 / 4.0 + a2;
    const double gap = level - kPi2;
    if (std::abs(gap) <= 1e-12 * kPi2) {
      ++r.n_zero;
    } else if (gap < 0.0) {
      ++r.n_minus;
    } else {
      break;
    }
  }
  return r;
}

std::vector<ProfilePoint> lambda_beta_profile(double beta, Side side, int grid, double tol) {
  if (grid < 64) {
    throw Error("lambda_beta_profile needs grid >= 64");
  }
  const SideSampler sampler(beta, side, tol);
  std::vector<SidePoint> pts = sampler.sample(sampling::compact_grid(side, grid), sampling::ladder(2.0, 6.0, 4));
  std::vector<ProfilePoint> out;
  const double mid = sinus_profile().u_mid();
  for (const SidePoint& p : pts) {
    out.push_back({p.c, 1.0 / (p.c - mid), p.lambda, p.est_error, false});
  }
  ProfilePoint end;
  end.c = sampler.endpoint();
  end.ctilde = 1.0 / (end.c - mid);
  end.lambda1 = sampler.endpoint_value();
  end.closed_form = true;
  out.push_back(end);
  std::sort(out.begin(), out.end(), [](const ProfilePoint& a, const ProfilePoint& b) { return a.c < b.c; });
  return out;
}

SideMinimum side_minimum(double beta, Side side, double tol, int coarse) {
  const SideSampler sampler(beta, side, tol);
  const std::vector<SidePoint> pts =
      sampler.sample(sampling::compact_grid(side, coarse), sampling::ladder(2.0, 8.0, 4));
  const double end_value = sampler.endpoint_value();
  SideMinimum best{end_value, sampler.endpoint(), true};
  if (pts.empty()) {
    return best;
  }
  const auto lowest = std::min_element(pts.begin(), pts.end(),
                                       [](const SidePoint& a, const SidePoint& b) { return a.lambda < b.lambda; });
  if (lowest == pts.begin() && end_value <= lowest->lambda) {
    // monotone toward the endpoint
    return best;
  }
  const SidePoint m = sampler.refine_minimum(pts);
  if (m.lambda >= end_value) {
    return best;
  }
  return {m.lambda, m.c, false};
}

BoundaryPoint capital_lambda(double beta, double tol) {
  if (!(beta > -0.5 * kPi2 && beta < 0.5 * kPi2)) {
    throw BetaOutOfRange("capital_lambda needs beta in (-pi^2/2, pi^2/2)");
  }
  const Side side = beta > 0.0 ? Side::left : Side::right;
  const SideMinimum m = side_minimum(beta, side, tol);
  BoundaryPoint b;
  b.beta = beta;
  b.capital_lambda = std::max(0.0, -m.lambda);
  b.alpha_lower = std::sqrt(b.capital_lambda);
  b.snm_alpha = closedform::snm_alpha(beta);
  if (b.capital_lambda == 0.0) {
    b.kind = BoundaryCase::zero;
    b.c_star = side == Side::left ? 0.0 : 1.0;
  } else if (m.at_endpoint) {
    b.kind = BoundaryCase::endpoint_monotone;
    b.c_star = m.c;
  } else {
    b.kind = BoundaryCase::interior_hump;
    b.c_star = m.c;
  }
  return b;
}

double beta_minus_gap(double beta, double tol) { return side_minimum(beta, Side::right, tol, 33).lambda; }

double find_beta_minus(double tol) {
  if (!(tol > 0.0)) {
    throw Error("find_beta_minus needs tol > 0");
  }
  const double eig_tol = std::clamp(tol, 1e-10, 1e-7);
  double lo = -0.5 * kPi2;
  double hi = 0.0;
  while (hi - lo > 1e-4) {
    const double mid = 0.5 * (lo + hi);
    const double g = beta_minus_gap(mid, eig_tol);
    if (std::abs(g) < tol) {
      return mid;
    }
    if (g < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<BoundaryPoint> boundary_sweep(const std::vector<double>& betas, double tol, int threads) {
  std::vector<BoundaryPoint> out;
  out.reserve(betas.size());
  const int saved = default_threads();
  set_default_threads(threads);
  try {
    for (double b : betas) {
      out.push_back(capital_lambda(b, tol));
    }
  } catch (...) {
    set_default_threads(saved);
    throw;
  }
  set_default_threads(saved);
  return out;
}

IndexCount index_counts(double alpha, double beta) {
  if (!(alpha > 0.0)) {
    throw Error("index_counts needs alpha > 0");
  }
  if (!(beta > -0.5 * kPi2 && beta < 0.5 * kPi2)) {
    throw BetaOutOfRange("index_counts needs beta in (-pi^2/2, pi^2/2)");
  }
  IndexCount ic;
  ic.alpha = alpha;
  ic.beta = beta;
  ic.n_minus = n_minus_L_alpha(alpha, beta).n_minus;
  ic.k_unstable = count_unstable(sinus_profile(), alpha, beta);
  for (const CensusEntry& e : neutral_nonresonant_census(alpha, beta)) {
    if (e.signature <= 0) {
      ++ic.k_i_nonpos;
    }
  }
  const double snm = closedform::snm_alpha(beta);
  if (std::isfinite(snm) && std::abs(alpha - snm) <= 1e-9 * std::max(1.0, alpha)) {
    // singular neutral mode at c = 0; its signature follows sign(U_beta * lambda'(0-))
    const ExtendedReal d = closedform::dlambda1_dc_at_zero(beta);
    if (d.is_finite() && d.value() <= 0.0) {
      ++ic.k_i_nonpos;
    }
  }
  ic.holds = ic.k_unstable + ic.k_i_nonpos == ic.n_minus;
  return ic;
}

}  // namespace kuostab
