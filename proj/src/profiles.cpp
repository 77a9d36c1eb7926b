#include "kuostab/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "kuostab/errors.hpp"

namespace kuostab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRemovableWindow = 1e-10;

}  // namespace

double FlowProfile::k_beta_ratio(double beta, double y) const {
  return (beta - d2u(y)) / (u(y) - u_beta(beta));
}

double FlowProfile::k_beta(double beta, double y) const {
  if (k_beta_exact) {
    return k_beta_exact(beta, y);
  }
  const double ub = u_beta(beta);
  const double gap = u(y) - ub;
  if (std::abs(gap) >= kRemovableWindow) {
    return (beta - d2u(y)) / gap;
  }
  const double slope = du(y);
  if (std::abs(slope) > 1e-6) {
    return -d3u(y) / slope;
  }
  // U' vanishes too: average the ratio on both sides of y.
  const double offset = 1e-4 * length();
  const double left = std::max(y1, y - offset);
  const double right = std::min(y2, y + offset);
  double sum = 0.0;
  int count = 0;
  for (double s : {left, right}) {
    if (s != y) {
      sum += (beta - d2u(s)) / (u(s) - ub);
      ++count;
    }
  }
  return sum / count;
}

void FlowProfile::require_beta_in_range(double beta) const {
  const double slack = 1e-12 * std::max(1.0, std::abs(upp_max - upp_min));
  if (!(beta >= upp_min - slack && beta <= upp_max + slack)) {
    throw BetaOutOfRange("beta = " + std::to_string(beta) + " outside Ran(U'') of profile " + name);
  }
}

FlowProfile sinus_profile() {
  FlowProfile p;
  p.name = "sinus";
  p.y1 = -1.0;
  p.y2 = 1.0;
  // cos^2 form keeps full relative accuracy near the walls where U -> 0
  p.u = [](double y) {
    const double h = std::cos(0.5 * kPi * y);
    return h * h;
  };
  p.du = [](double y) { return -0.5 * kPi * std::sin(kPi * y); };
  p.d2u = [](double y) { return -0.5 * kPi * kPi * std::cos(kPi * y); };
  p.d3u = [](double y) { return 0.5 * kPi * kPi * kPi * std::sin(kPi * y); };
  p.u_min = 0.0;
  p.u_max = 1.0;
  p.upp_min = -0.5 * kPi * kPi;
  p.upp_max = 0.5 * kPi * kPi;
  p.u_beta = [](double beta) { return 0.5 - beta / (kPi * kPi); };
  p.k_beta_exact = [](double, double) { return kPi * kPi; };
  return p;
}

FlowProfile tanh_profile(double half_width) {
  const double edge = std::tanh(half_width);
  if (!(half_width > 0.0) || edge >= 1.0 / std::sqrt(3.0)) {
    throw Error("tanh profile needs 0 < tanh(half_width) < 1/sqrt(3)");
  }
  FlowProfile p;
  p.name = "tanh";
  p.y1 = -half_width;
  p.y2 = half_width;
  p.u = [](double y) { return std::tanh(y); };
  p.du = [](double y) {
    const double t = std::tanh(y);
    return 1.0 - t * t;
  };
  p.d2u = [](double y) {
    const double t = std::tanh(y);
    return -2.0 * t * (1.0 - t * t);
  };
  p.d3u = [](double y) {
    const double t = std::tanh(y);
    const double s2 = 1.0 - t * t;
    return -2.0 * s2 * (1.0 - 3.0 * t * t);
  };
  p.u_min = -edge;
  p.u_max = edge;
  // U'' = g(U) with g(u) = -2u(1 - u^2), decreasing on |u| < 1/sqrt(3).
  const auto g = [](double u) { return -2.0 * u * (1.0 - u * u); };
  p.upp_min = g(edge);
  p.upp_max = g(-edge);
  p.u_beta = [g, edge](double beta) {
    double lo = -edge;
    double hi = edge;
    for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
      const double mid = 0.5 * (lo + hi);
      // g is decreasing: g(mid) > beta means the root lies to the right.
      if (g(mid) > beta) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  };
  return p;
}

std::optional<FlowProfile> profile_by_name(const std::string& name) {
  if (name == "sinus") {
    return sinus_profile();
  }
  if (name == "tanh") {
    return tanh_profile();
  }
  return std::nullopt;
}

ClassKPlusReport check_class_k_plus(const FlowProfile& profile, double beta, int n_samples) {
  if (n_samples < 16) {
    throw Error("check_class_k_plus needs at least 16 samples");
  }
  profile.require_beta_in_range(beta);
  ClassKPlusReport report;
  report.u_beta = profile.u_beta(beta);
  report.k_min = std::numeric_limits<double>::infinity();
  report.k_max = -std::numeric_limits<double>::infinity();
  bool ok = true;
  const double h = profile.length() / (n_samples - 1);
  for (int i = 0; i < n_samples; ++i) {
    const double y = (i == n_samples - 1) ? profile.y2 : profile.y1 + i * h;
    const double k = profile.k_beta(beta, y);
    if (!std::isfinite(k) || !(k > 0.0)) {
      ok = false;
    }
    report.k_min = std::min(report.k_min, k);
    report.k_max = std::max(report.k_max, k);
  }
  report.ok = ok;
  return report;
}

}  // namespace kuostab
