#include "kuostab/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include "kuostab/errors.hpp"
#include "kuostab/ode.hpp"

namespace kuostab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kModeIntervals = 2048;

// Coefficients of the Rayleigh-Kuo equation at fixed (alpha, beta, c).
class Coefficients {
 public:
  Coefficients(const FlowProfile& profile, double alpha, double beta, cplx c)
      : p_(profile), alpha2_(alpha * alpha), beta_(beta), c_(c) {
    beta_in_range_ = beta >= p_.upp_min && beta <= p_.upp_max;
    u_beta_ = beta_in_range_ ? p_.u_beta(beta) : std::numeric_limits<double>::quiet_NaN();
    if (c.imag() == 0.0) {
      const double scale = std::max(1.0, p_.u_max - p_.u_min);
      removable_ = beta_in_range_ && std::abs(c.real() - u_beta_) <= 1e-12 * scale;
      if (!removable_ && c.real() >= p_.u_min && c.real() <= p_.u_max) {
        throw InvalidSpeed("real c = " + std::to_string(c.real()) + " inside Ran(U)");
      }
    }
  }

  [[nodiscard]] double alpha2() const { return alpha2_; }
  [[nodiscard]] bool removable() const { return removable_; }
  [[nodiscard]] bool beta_in_range() const { return beta_in_range_; }
  [[nodiscard]] double u_beta() const { return u_beta_; }

  // q and dq/dc at y
  [[nodiscard]] std::pair<cplx, cplx> q(double y) const {
    if (removable_) {
      return {p_.k_beta(beta_, y), 0.0};
    }
    const double num = beta_ - p_.d2u(y);
    const cplx inv = 1.0 / (p_.u(y) - c_);
    return {num * inv, num * inv * inv};
  }

 private:
  const FlowProfile& p_;
  double alpha2_;
  double beta_;
  cplx c_;
  bool beta_in_range_ = false;
  bool removable_ = false;
  double u_beta_ = 0.0;
};

double distance_to_box(cplx z, double x0, double x1, double y0, double y1) {
  const double x = z.real();
  const double y = z.imag();
  if (x >= x0 && x <= x1 && y >= y0 && y <= y1) {
    return std::min({x - x0, x1 - x, y - y0, y1 - y});
  }
  const double dx = std::max({x0 - x, 0.0, x - x1});
  const double dy = std::max({y0 - y, 0.0, y - y1});
  return std::hypot(dx, dy);
}

std::optional<cplx> newton_root(const FlowProfile& profile, double alpha, double beta, cplx start) {
  cplx c = start;
  try {
    for (int it = 0; it < 40; ++it) {
      const DispersionValue v = dispersion_with_derivative(profile, alpha, beta, c);
      if (v.dd == 0.0) {
        return std::nullopt;
      }
      const cplx step = v.d / v.dd;
      c -= step;
      if (std::abs(c - start) > 1.0) {
        return std::nullopt;
      }
      if (std::abs(step) < 1e-12 * std::max(1.0, std::abs(c))) {
        return c;
      }
    }
  } catch (const Error&) {
    return std::nullopt;
  }
  return std::nullopt;
}

std::optional<cplx> secant_root(const FlowProfile& profile, double alpha, double beta, cplx seed) {
  cplx c0 = seed;
  cplx c1 = seed + cplx(1e-4, 1e-4);
  try {
    cplx d0 = dispersion(profile, alpha, beta, c0);
    cplx d1 = dispersion(profile, alpha, beta, c1);
    for (int it = 0; it < 100; ++it) {
      const cplx denom = d1 - d0;
      if (denom == 0.0) {
        break;
      }
      const cplx c2 = c1 - d1 * (c1 - c0) / denom;
      c0 = c1;
      d0 = d1;
      c1 = c2;
      if (c1.imag() <= 0.0) {
        // left the upper half plane: not an unstable root
        return std::nullopt;
      }
      d1 = dispersion(profile, alpha, beta, c1);
      if (std::abs(c1 - c0) < 1e-13 * std::max(1.0, std::abs(c1)) || d1 == 0.0) {
        return c1;
      }
    }
  } catch (const Error&) {
    return std::nullopt;
  }
  return std::nullopt;
}

struct ScanBox {
  double x0, x1, y0, y1;
  int nx, ny;
};

// Local minima of |D| on a uniform grid, best first.
std::vector<cplx> scan_seeds(const FlowProfile& profile, double alpha, double beta, const ScanBox& box) {
  std::vector<double> mag(static_cast<std::size_t>(box.nx * box.ny));
  auto at = [&](int i, int j) -> double& { return mag[static_cast<std::size_t>(i * box.ny + j)]; };
  auto point = [&](int i, int j) {
    return cplx(box.x0 + (box.x1 - box.x0) * i / (box.nx - 1), box.y0 + (box.y1 - box.y0) * j / (box.ny - 1));
  };
  for (int i = 0; i < box.nx; ++i) {
    for (int j = 0; j < box.ny; ++j) {
      try {
        at(i, j) = std::abs(dispersion(profile, alpha, beta, point(i, j)));
      } catch (const Error&) {
        at(i, j) = std::numeric_limits<double>::infinity();
      }
    }
  }
  std::vector<std::pair<double, cplx>> minima;
  for (int i = 0; i < box.nx; ++i) {
    for (int j = 0; j < box.ny; ++j) {
      const double v = at(i, j);
      bool is_min = std::isfinite(v);
      for (auto [di, dj] : {std::pair{-1, 0}, {1, 0}, {0, -1}, {0, 1}}) {
        const int a = i + di;
        const int b = j + dj;
        if (a >= 0 && a < box.nx && b >= 0 && b < box.ny && at(a, b) < v) {
          is_min = false;
        }
      }
      if (is_min) {
        minima.emplace_back(v, point(i, j));
      }
    }
  }
  std::sort(minima.begin(), minima.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
  std::vector<cplx> seeds;
  for (const auto& m : minima) {
    seeds.push_back(m.second);
  }
  return seeds;
}

double k_sup(const FlowProfile& profile, double beta) {
  double sup = 0.0;
  const int n = 4096;
  for (int i = 0; i <= n; ++i) {
    sup = std::max(sup, profile.k_beta(beta, profile.y1 + profile.length() * i / n));
  }
  return sup;
}

// Exponent s of the recessive solution (y - wall)^s when c equals U at a
// wall where U' vanishes, or nullopt when the wall is not such a point.
std::optional<double> wall_exponent(const FlowProfile& p, double beta, double c, double wall) {
  if (std::abs(p.u(wall) - c) > 1e-14 || std::abs(p.du(wall)) > 1e-12 || p.d2u(wall) == 0.0) {
    return std::nullopt;
  }
  const double a = 2.0 * (beta - p.d2u(wall)) / p.d2u(wall);
  if (0.25 - a < 0.0) {
    return std::nullopt;
  }
  return 0.5 + std::sqrt(0.25 - a);
}

// D at a real c equal to U at both walls (a critical wall value such as
// c = 0 for the Sinus flow). The solution starts on the recessive branch at
// distance delta from y1 and D is read at distance delta from y2.
cplx dispersion_at_wall_value(const FlowProfile& p, double alpha, double beta, double c) {
  const std::optional<double> s1 = wall_exponent(p, beta, c, p.y1);
  const std::optional<double> s2 = wall_exponent(p, beta, c, p.y2);
  if (!s1 || !s2) {
    throw InvalidSpeed("real c = " + std::to_string(c) + " is a singular value of U");
  }
  const int samples = 1024;
  for (int i = 1; i < samples; ++i) {
    const double y = p.y1 + p.length() * i / samples;
    if (std::abs(p.u(y) - c) < 1e-12) {
      throw InvalidSpeed("real c = " + std::to_string(c) + " is attained inside the channel");
    }
  }
  const double delta = 1e-6 * p.length();
  const double a2 = alpha * alpha;
  auto rhs = [&](double y, const ode::State<2>& st) {
    const double q = (beta - p.d2u(y)) / (p.u(y) - c);
    return ode::State<2>{st[1], (a2 - q) * st[0]};
  };
  ode::State<2> st{std::pow(delta, *s1), *s1 * std::pow(delta, *s1 - 1.0)};
  double h = 1e-8;
  ode::integrate<2>(rhs, p.y1 + delta, p.y2 - delta, st, h);
  return st[0];
}

}  // namespace

const char* to_string(ModeKind kind) {
  switch (kind) {
    case ModeKind::unstable:
      return "unstable";
    case ModeKind::regular_neutral:
      return "regular_neutral";
    case ModeKind::singular_neutral:
      return "singular_neutral";
    case ModeKind::nonresonant_neutral:
      return "nonresonant_neutral";
  }
  return "unknown";
}

cplx dispersion(const FlowProfile& profile, double alpha, double beta, cplx c) {
  if (c.imag() == 0.0 && (c.real() == profile.u_min || c.real() == profile.u_max)) {
    const bool regular = beta >= profile.upp_min && beta <= profile.upp_max &&
                         std::abs(profile.u_beta(beta) - c.real()) <= 1e-12;
    if (!regular) {
      return dispersion_at_wall_value(profile, alpha, beta, c.real());
    }
  }
  const Coefficients k(profile, alpha, beta, c);
  auto rhs = [&k](double y, const ode::State<2>& s) {
    return ode::State<2>{s[1], (k.alpha2() - k.q(y).first) * s[0]};
  };
  ode::State<2> s{0.0, 1.0};
  double h = 1e-3;
  ode::integrate<2>(rhs, profile.y1, profile.y2, s, h);
  return s[0];
}

DispersionValue dispersion_with_derivative(const FlowProfile& profile, double alpha, double beta, cplx c) {
  const Coefficients k(profile, alpha, beta, c);
  auto rhs = [&k](double y, const ode::State<4>& s) {
    const auto [q, dq] = k.q(y);
    return ode::State<4>{s[1], (k.alpha2() - q) * s[0], s[3], (k.alpha2() - q) * s[2] - dq * s[0]};
  };
  ode::State<4> s{0.0, 1.0, 0.0, 0.0};
  double h = 1e-3;
  ode::Options opt;
  opt.controlled = 4;
  ode::integrate<4>(rhs, profile.y1, profile.y2, s, h, opt);
  return {s[0], s[2]};
}

double semicircle_radius(const FlowProfile& profile, double alpha, double beta) {
  if (alpha == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return 0.5 * (profile.u_max - profile.u_min) + std::abs(beta) / (2.0 * alpha * alpha);
}

ContourResult unstable_winding(const FlowProfile& profile, double alpha, double beta, const ContourOptions& opt) {
  if (!(alpha > 0.0)) {
    throw Error("count_unstable needs alpha > 0");
  }
  const double m = profile.u_mid();
  const double radius = semicircle_radius(profile, alpha, beta) + opt.margin;
  const double x0 = m - radius;
  const double x1 = m + radius;
  const double y0 = opt.eps;
  const double y1 = radius;
  const std::array<cplx, 5> corners = {cplx(x0, y0), cplx(x1, y0), cplx(x1, y1), cplx(x0, y1), cplx(x0, y0)};
  const double max_step = radius / 16.0;
  const double min_step = 1e-12 * radius;
  const double near = 10.0 * opt.eps;

  ContourResult result;
  std::vector<cplx> checked;
  auto check_nearby_root = [&](cplx z) {
    for (cplx r : checked) {
      if (std::abs(r - z) < near) {
        return;
      }
    }
    checked.push_back(z);
    const std::optional<cplx> root = newton_root(profile, alpha, beta, z);
    if (!root || std::abs(root->imag()) <= 1e-9) {
      return;
    }
    const cplx upper(root->real(), std::abs(root->imag()));
    if (distance_to_box(upper, x0, x1, y0, y1) < near) {
      throw ContourAmbiguous("root near c = " + std::to_string(upper.real()) + " + " +
                             std::to_string(upper.imag()) + "i lies on the counting contour");
    }
  };

  DispersionValue cur = dispersion_with_derivative(profile, alpha, beta, corners[0]);
  ++result.evaluations;
  double phase = 0.0;
  for (std::size_t e = 0; e + 1 < corners.size(); ++e) {
    const cplx a = corners[e];
    const cplx b = corners[e + 1];
    const double len = std::abs(b - a);
    const cplx dir = (b - a) / len;
    double s = 0.0;
    while (s < len) {
      const double dist = cur.dd == 0.0 ? max_step : std::abs(cur.d / cur.dd);
      if (dist < near) {
        check_nearby_root(a + dir * s);
      }
      double step = std::min({0.3 * dist, max_step, len - s});
      step = std::max(step, std::min(min_step, len - s));
      while (true) {
        const double s_new = (len - s - step <= 1e-15 * len) ? len : s + step;
        const cplx z = (s_new == len) ? b : a + dir * s_new;
        const DispersionValue next = dispersion_with_derivative(profile, alpha, beta, z);
        ++result.evaluations;
        if (next.d == 0.0) {
          throw ContourAmbiguous("D vanishes on the counting contour");
        }
        const double dphase = std::arg(next.d / cur.d);
        const cplx predicted = cur.d + cur.dd * dir * (s_new - s);
        const bool smooth = std::abs(dphase) <= 0.5 && std::abs(predicted - next.d) <= 0.5 * std::abs(next.d);
        if (smooth) {
          phase += dphase;
          cur = next;
          s = s_new;
          break;
        }
        step *= 0.5;
        if (step < min_step) {
          check_nearby_root(z);
          throw ContourAmbiguous("contour tracking could not resolve the phase of D");
        }
      }
    }
  }
  result.winding = phase / (2.0 * kPi);
  result.count = static_cast<int>(std::lround(result.winding));
  if (std::abs(result.winding - result.count) > 0.1) {
    throw NoConvergence("winding number " + std::to_string(result.winding) + " is not near an integer");
  }
  return result;
}

int count_unstable(const FlowProfile& profile, double alpha, double beta) {
  return unstable_winding(profile, alpha, beta).count;
}

Mode build_mode(const FlowProfile& profile, double alpha, double beta, cplx c, ModeKind kind) {
  const Coefficients k(profile, alpha, beta, c);
  const double a2 = alpha * alpha;
  // state: phi, phi', then running integrals of the ModeIntegrals fields
  auto rhs = [&](double y, const ode::State<9>& s) {
    const auto [q, dq] = k.q(y);
    (void)dq;
    const cplx phi = s[0];
    const double p2 = std::norm(phi);
    const double num = beta - profile.d2u(y);
    const double gap2 = k.removable() ? 0.0 : std::norm(profile.u(y) - c);
    const double kb = k.beta_in_range() ? profile.k_beta(beta, y) : std::numeric_limits<double>::quiet_NaN();
    ode::State<9> out{};
    out[0] = s[1];
    out[1] = (a2 - q) * phi;
    out[2] = p2;
    if (!k.removable()) {
      out[3] = num / gap2 * p2;
      out[4] = std::abs(num) / gap2 * p2;
      out[5] = num * (profile.u(y) - k.u_beta()) / gap2 * p2;
    }
    out[6] = std::norm(s[1]);
    out[7] = std::norm((a2 - q) * phi);
    out[8] = std::norm(q * phi) / kb;
    return out;
  };
  // K-weighted integral is collected separately to keep the state small
  Mode mode;
  mode.c = c;
  mode.alpha = alpha;
  mode.beta = beta;
  mode.u_beta = k.u_beta();
  mode.u_min = profile.u_min;
  mode.u_max = profile.u_max;
  mode.kind = kind;
  const double h_grid = profile.length() / kModeIntervals;
  mode.grid.resize(kModeIntervals + 1);
  mode.phi.resize(kModeIntervals + 1);
  ode::State<9> s{};
  s[1] = 1.0;
  double h = 1e-3;
  double peak = 0.0;
  double k_weighted = 0.0;
  std::vector<double> kb_samples(kModeIntervals + 1);
  for (int i = 0; i <= kModeIntervals; ++i) {
    const double y = (i == kModeIntervals) ? profile.y2 : profile.y1 + i * h_grid;
    if (i > 0) {
      ode::integrate<9>(rhs, mode.grid[static_cast<std::size_t>(i - 1)], y, s, h);
    }
    mode.grid[static_cast<std::size_t>(i)] = y;
    mode.phi[static_cast<std::size_t>(i)] = s[0];
    peak = std::max(peak, std::abs(s[0]));
  }
  const double n2 = s[2].real();
  const double scale = 1.0 / std::sqrt(n2);
  for (cplx& v : mode.phi) {
    v *= scale;
  }
  // K_beta |phi|^2 is smooth, so the trapezoid rule on the sample grid would
  // lose accuracy only at the walls; use Simpson on the samples instead.
  if (k.beta_in_range()) {
    for (int i = 0; i <= kModeIntervals; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      const double w = (i == 0 || i == kModeIntervals) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      k_weighted += w * profile.k_beta(beta, mode.grid[idx]) * std::norm(mode.phi[idx]);
    }
    k_weighted *= h_grid / 3.0;
  }
  ModeIntegrals& in = mode.integrals;
  in.norm = n2;
  in.weighted = s[3].real() / n2;
  in.weighted_abs = s[4].real() / n2;
  in.shifted = s[5].real() / n2;
  in.grad = s[6].real() / n2;
  in.curv = s[7].real() / n2;
  in.vort = s[8].real() / n2;
  in.k_weighted = k_weighted;
  in.k_sup = k.beta_in_range() ? k_sup(profile, beta) : std::numeric_limits<double>::quiet_NaN();
  mode.residuals = verify_mode_identities(mode);
  mode.residuals.ode = peak > 0.0 ? std::abs(mode.phi.back()) / (peak * scale) : 0.0;
  return mode;
}

std::optional<Mode> find_unstable_mode(const FlowProfile& profile, double alpha, double beta) {
  if (alpha < 0.0) {
    throw Error("find_unstable_mode needs alpha >= 0");
  }
  ScanBox box{};
  const double m = profile.u_mid();
  if (alpha > 0.0) {
    if (count_unstable(profile, alpha, beta) < 1) {
      return std::nullopt;
    }
    const double r = semicircle_radius(profile, alpha, beta) + 0.1;
    box = {m - r, m + r, 1e-3, r, 48, 24};
  } else {
    box = {m - 2.0, m + 2.0, 1e-3, 2.0, 81, 40};
  }
  const std::vector<cplx> seeds = scan_seeds(profile, alpha, beta, box);
  for (std::size_t i = 0; i < seeds.size() && i < 8; ++i) {
    const std::optional<cplx> root = secant_root(profile, alpha, beta, seeds[i]);
    if (root && root->imag() > 1e-8) {
      return build_mode(profile, alpha, beta, *root, ModeKind::unstable);
    }
  }
  if (alpha > 0.0) {
    throw NoConvergence("secant iteration failed from every seed");
  }
  return std::nullopt;
}

ModeResiduals verify_mode_identities(const Mode& mode) {
  const ModeIntegrals& in = mode.integrals;
  const double a2 = mode.alpha * mode.alpha;
  ModeResiduals r = mode.residuals;
  r.identity2 = in.weighted_abs > 0.0 ? in.weighted / in.weighted_abs : 0.0;
  const double energy = in.grad + a2;
  r.identity1 = (energy - in.shifted) / energy;
  r.h1_slack = (in.k_weighted - energy) / in.k_weighted;
  const double h2 = in.curv + 2.0 * a2 * in.grad + a2 * a2;
  r.h2_slack = (in.k_sup * in.k_weighted - h2) / (in.k_sup * in.k_weighted);
  r.lform = (in.vort - energy) / in.vort;
  const double mid = 0.5 * (mode.u_min + mode.u_max);
  const double radius =
      mode.alpha > 0.0 ? 0.5 * (mode.u_max - mode.u_min) + std::abs(mode.beta) / (2.0 * a2)
                       : std::numeric_limits<double>::infinity();
  r.semicircle_slack = radius - std::abs(mode.c - mid);
  return r;
}

QuadraticForm quadratic_form(const Mode& mode) {
  QuadraticForm qf;
  qf.via_identity = (mode.c - mode.u_beta) * mode.integrals.weighted;
  qf.via_definition = mode.integrals.vort - (mode.integrals.grad + mode.alpha * mode.alpha);
  return qf;
}

}  // namespace kuostab
