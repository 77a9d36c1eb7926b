#include "sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kuostab/closedform.hpp"
#include "kuostab/errors.hpp"
#include "kuostab/parallel.hpp"
#include "kuostab/slsolver.hpp"

namespace kuostab {

namespace {

constexpr double kInvPhi = 0.6180339887498949;

}  // namespace

SideSampler::SideSampler(double beta, Side side, double tol, int n_max)
    : beta_(beta), side_(side), tol_(tol), n_max_(n_max) {}

double SideSampler::endpoint_value() const {
  return side_ == Side::left ? closedform::lambda_c0(beta_, 1) : closedform::lambda_c1(beta_, 1);
}

double SideSampler::c_at_distance(double d) const { return side_ == Side::left ? -d : 1.0 + d; }

std::optional<SidePoint> SideSampler::solve(double c, double ct, bool compact) const {
  try {
    const SLProblem problem(sinus_profile(), beta_, compact ? Speed::compactified(ct) : Speed::finite(c));
    const EigenvalueResult r = solve_eigenvalues(problem, n_max_, tol_);
    SidePoint p;
    p.c = c;
    p.x = std::log10(std::abs(c - endpoint()));
    p.lambda = r.lambda[0];
    p.est_error = *std::max_element(r.est_error.begin(), r.est_error.end());
    p.all = r.lambda;
    return p;
  } catch (const NoConvergence&) {
    return std::nullopt;
  }
}

std::optional<SidePoint> SideSampler::at_distance(double d) const {
  return solve(c_at_distance(d), 0.0, false);
}

std::optional<SidePoint> SideSampler::at_ctilde(double ct) const { return solve(0.5 + 1.0 / ct, ct, true); }

std::vector<SidePoint> SideSampler::sample(const std::vector<double>& ctildes,
                                           const std::vector<double>& distances) const {
  const std::size_t n = ctildes.size() + distances.size();
  const auto results = parallel_map(n, [&](std::size_t i) {
    return i < ctildes.size() ? at_ctilde(ctildes[i]) : at_distance(distances[i - ctildes.size()]);
  });
  std::vector<SidePoint> out;
  for (const auto& r : results) {
    if (r) {
      out.push_back(*r);
    }
  }
  std::sort(out.begin(), out.end(), [](const SidePoint& a, const SidePoint& b) { return a.x < b.x; });
  return out;
}

SidePoint SideSampler::refine_minimum(const std::vector<SidePoint>& pts) const {
  std::size_t i = 0;
  for (std::size_t k = 1; k < pts.size(); ++k) {
    if (pts[k].lambda < pts[i].lambda) {
      i = k;
    }
  }
  SidePoint best = pts[i];
  auto probe = [&](double x) {
    std::optional<SidePoint> s = at_distance(std::pow(10.0, x));
    if (s && s->lambda < best.lambda) {
      best = *s;
    }
    return s ? s->lambda : std::numeric_limits<double>::infinity();
  };
  double a = i == 0 ? pts[0].x - 2.0 : pts[i - 1].x;
  double b = i + 1 < pts.size() ? pts[i + 1].x : pts[i].x + 1.0;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = probe(x1);
  double f2 = probe(x2);
  while (b - a > 1e-3) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = probe(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = probe(x2);
    }
  }
  return best;
}

namespace sampling {

std::vector<double> compact_grid(Side side, int points) {
  // ct in (-2, 0) on the left and (0, 2) on the right, endpoints excluded
  std::vector<double> out;
  for (int j = 1; j + 1 < points; ++j) {
    const double t = 2.0 * j / (points - 1);
    out.push_back(side == Side::left ? -2.0 + t : t);
  }
  return out;
}

std::vector<double> ladder(double k_first, double k_last, int per_decade) {
  std::vector<double> out;
  const int steps = static_cast<int>(std::lround((k_last - k_first) * per_decade));
  for (int i = 0; i <= steps; ++i) {
    out.push_back(std::pow(10.0, -(k_first + static_cast<double>(i) / per_decade)));
  }
  return out;
}

}  // namespace sampling
}  // namespace kuostab
