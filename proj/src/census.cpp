#include <algorithm>
#include <cmath>
#include <numbers>

#include "kuostab/errors.hpp"
#include "kuostab/slsolver.hpp"
#include "kuostab/stability.hpp"
#include "sampling.hpp"

namespace kuostab {

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

// Root in x of lambda_n + alpha^2 between two samples of opposite sign
// (Illinois variant of regula falsi).
double root_in_x(const SideSampler& sampler, int n, double a2, SidePoint lo, SidePoint hi) {
  const auto idx = static_cast<std::size_t>(n - 1);
  double xa = lo.x;
  double xb = hi.x;
  double fa = lo.all[idx] + a2;
  double fb = hi.all[idx] + a2;
  int side = 0;
  for (int it = 0; it < 100 && std::abs(xb - xa) > 1e-10; ++it) {
    const double x = (xa * fb - xb * fa) / (fb - fa);
    const std::optional<SidePoint> p = sampler.at_distance(std::pow(10.0, x));
    if (!p) {
      throw NoConvergence("census: eigenvalue solve failed during root refinement");
    }
    const double f = p->all[idx] + a2;
    if (f == 0.0) {
      return x;
    }
    if ((f > 0.0) == (fb > 0.0)) {
      xb = x;
      fb = f;
      if (side == -1) {
        fa *= 0.5;
      }
      side = -1;
    } else {
      xa = x;
      fa = f;
      if (side == 1) {
        fb *= 0.5;
      }
      side = 1;
    }
  }
  return 0.5 * (xa + xb);
}

}  // namespace

std::vector<CensusEntry> neutral_nonresonant_census(double alpha, double beta, double tol) {
  if (!(alpha > 0.0)) {
    throw Error("census needs alpha > 0");
  }
  const double a2 = alpha * alpha;
  const bool in_range = std::abs(beta) <= 0.5 * kPi2;
  const int n_max = in_range ? 1 : 6;
  const double u_beta = 0.5 - beta / kPi2;
  std::vector<CensusEntry> out;
  for (const Side side : {Side::left, Side::right}) {
    const SideSampler sampler(beta, side, tol, n_max);
    std::vector<SidePoint> pts = sampler.sample(sampling::compact_grid(side, 65), sampling::ladder(2.0, 8.0, 4));
    if (pts.empty()) {
      continue;
    }
    // narrow dips near the endpoint can hide between samples
    pts.push_back(sampler.refine_minimum(pts));
    std::sort(pts.begin(), pts.end(), [](const SidePoint& a, const SidePoint& b) { return a.x < b.x; });
    for (int n = 1; n <= n_max; ++n) {
      const auto idx = static_cast<std::size_t>(n - 1);
      bool all_positive = true;
      for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const double f0 = pts[k].all[idx] + a2;
        const double f1 = pts[k + 1].all[idx] + a2;
        all_positive = all_positive && pts[k].all[idx] > 0.0;
        if ((f0 < 0.0) == (f1 < 0.0)) {
          continue;
        }
        const double x = root_in_x(sampler, n, a2, pts[k], pts[k + 1]);
        CensusEntry e;
        e.n = n;
        e.c = sampler.c_at_distance(std::pow(10.0, x));
        const SLProblem problem(sinus_profile(), beta, Speed::finite(e.c));
        const EigenPair pair = eigenfunction(problem, n, tol);
        e.dlambda_dc = dlambda_dc(pair, problem);
        const double value = -(e.c - u_beta) * e.dlambda_dc;
        e.signature = value > 0.0 ? 1 : (value < 0.0 ? -1 : 0);
        out.push_back(e);
      }
      all_positive = all_positive && pts.back().all[idx] > 0.0;
      if (all_positive) {
        break;
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const CensusEntry& a, const CensusEntry& b) {
    return a.n != b.n ? a.n < b.n : a.c < b.c;
  });
  return out;
}

}  // namespace kuostab
