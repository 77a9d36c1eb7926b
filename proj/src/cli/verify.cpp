#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "kuostab/cli.hpp"
#include "kuostab/closedform.hpp"
#include "kuostab/dispersion.hpp"
#include "kuostab/errors.hpp"
#include "kuostab/profiles.hpp"
#include "kuostab/slsolver.hpp"
#include "kuostab/specfun.hpp"
#include "kuostab/stability.hpp"

namespace kuostab::cli {

namespace {

using nlohmann::json;

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

class Checker {
 public:
  explicit Checker(VerifyReport& report) : report_(report) {}

  // passes when value <= limit
  void below(const std::string& name, double value, double limit) { record(name, value <= limit, value, limit); }
  // passes when value >= limit
  void above(const std::string& name, double value, double limit) { record(name, value >= limit, value, limit); }
  void expect(const std::string& name, bool ok, double value = std::nan("")) {
    record(name, ok, value, std::nan(""));
  }

  // Runs body; a library error counts as a failed check under `name`.
  void guard(const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const Error& e) {
      json d = {{"error", e.what()}, {"name", name}, {"passed", false}};
      push(name, false, d);
    }
  }

 private:
  void record(const std::string& name, bool ok, double value, double limit) {
    json d = {{"name", name}, {"passed", ok}, {"value", number(value)}};
    if (!std::isnan(limit)) {
      d["limit"] = limit;
    }
    push(name, ok, d);
  }

  void push(const std::string& name, bool ok, const json& d) {
    ok ? ++report_.passed : ++report_.failed;
    report_.names.push_back(name);
    report_.details.push_back(d.dump());
  }

  VerifyReport& report_;
};

std::string tag(const std::string& base, double x) { return base + "@" + format_number(x); }

double lambda1(double beta, Speed speed, double tol = 1e-10) {
  return eigenvalues(SLProblem(sinus_profile(), beta, speed), 1, tol).front();
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                        double whole, double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * eps) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double eps) {
  const double fa = f(a);
  const double fm = f(0.5 * (a + b));
  const double fb = f(b);
  return adaptive_simpson(f, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), eps, 50);
}

void suite_profiles(Checker& ck) {
  for (const std::string name : {"sinus", "tanh"}) {
    const FlowProfile p = *profile_by_name(name);
    std::mt19937 rng(20240611);
    std::uniform_real_distribution<double> pick(p.y1 + 0.01, p.y2 - 0.01);
    const double h = 1e-5;
    double worst = 0.0;
    for (int i = 0; i < 64; ++i) {
      const double y = pick(rng);
      const std::array<std::pair<const RealFn*, const RealFn*>, 3> pairs{
          {{&p.u, &p.du}, {&p.du, &p.d2u}, {&p.d2u, &p.d3u}}};
      for (const auto& [f, df] : pairs) {
        const double fd = ((*f)(y + h) - (*f)(y - h)) / (2.0 * h);
        const double exact = (*df)(y);
        const double scale = std::max({std::abs(exact), std::abs((*f)(y)), 1e-3});
        worst = std::max(worst, std::abs(fd - exact) / scale);
      }
    }
    ck.below("profiles." + name + ".derivative_consistency", worst, 1e-6);
  }

  const FlowProfile s = sinus_profile();
  for (double f : {-0.5, -0.25, 0.0, 0.3, 0.5}) {
    const double beta = f * kPi2;
    const double ub = s.u_beta(beta);
    double worst = 0.0;
    for (int i = 0; i <= 400; ++i) {
      const double y = -1.0 + 2.0 * i / 400.0;
      if (std::abs(s.u(y) - ub) > 1e-5) {
        worst = std::max(worst, std::abs(s.k_beta_ratio(beta, y) - kPi2) / kPi2);
      }
    }
    ck.below(tag("profiles.sinus.k_beta_ratio", f), worst, 1e-9);
    ck.expect(tag("profiles.sinus.class_k_plus", f), check_class_k_plus(s, beta, 201).ok);
  }
  const FlowProfile t = tanh_profile();
  ck.expect("profiles.tanh.class_k_plus", check_class_k_plus(t, 0.5 * (t.upp_min + t.upp_max), 201).ok);
}

void suite_specfun(Checker& ck) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> ab(-3.0, 3.0);
  std::uniform_real_distribution<double> cc(0.6, 4.0);
  std::uniform_real_distribution<double> zz(0.05, 0.95);
  double worst = 0.0;
  int used = 0;
  while (used < 64) {
    const double a = ab(rng);
    const double b = ab(rng);
    const double c = cc(rng);
    const double z = zz(rng);
    if (c - a - b <= 0.1) {
      continue;
    }
    ++used;
    const double direct = specfun::hyp2f1_series(a, b, c, z);
    const double euler = specfun::hyp2f1_euler(a, b, c, z);
    worst = std::max(worst, std::abs(direct - euler) / std::max(std::abs(direct), 1e-300));
  }
  ck.below("specfun.hyp2f1.euler_vs_direct", worst, 1e-10);

  double worst_dispatch = 0.0;
  for (double z : {0.1, 0.4, 0.6, 0.8, 0.95}) {
    const double direct = specfun::hyp2f1_series(0.3, 0.7, 2.1, z);
    const double v = specfun::hyp2f1({0.3, 0.7, 2.1, z});
    worst_dispatch = std::max(worst_dispatch, std::abs(v - direct) / std::abs(direct));
  }
  ck.below("specfun.hyp2f1.dispatch", worst_dispatch, 1e-10);

  const double at_one = specfun::gauss_at_one(0.3, 0.7, 4.0);
  const double near_one = specfun::hyp2f1_series(0.3, 0.7, 4.0, 1.0 - 1e-9);
  ck.below("specfun.gauss_at_one", std::abs(at_one - near_one) / at_one, 1e-7);

  for (double s : {-0.5, 0.5, 1.7, 3.2}) {
    // y = 1 - u^2 removes the endpoint singularity for s < 0
    const auto f = [s](double u) {
      return u == 0.0 ? (s < 0.0 ? 2.0 * std::pow(kPi / 2.0, s) * std::pow(u + 1e-300, 2.0 * s + 1.0) : 0.0)
                      : 2.0 * u * std::pow(std::sin(kPi * u * u / 2.0), s);
    };
    const double quad = 2.0 * integrate(f, 0.0, 1.0, 1e-13);
    const double v = specfun::cos_power_integral(s).value();
    ck.below(tag("specfun.cos_power_integral", s), std::abs(v - quad) / quad, 1e-8);
  }

  double worst_rec = 0.0;
  for (int i = 0; i <= 200; ++i) {
    const double x = 0.1 + (50.0 - 0.1) * i / 200.0;
    worst_rec = std::max(worst_rec, std::abs(specfun::ln_gamma(x + 1.0) - specfun::ln_gamma(x) - std::log(x)));
  }
  ck.below("specfun.ln_gamma.recurrence", worst_rec, 1e-12);

  double worst_refl = 0.0;
  for (double x : {-2.7, -1.3, -0.4, 0.25, 0.6}) {
    const double lhs = specfun::gamma_signed(x) * specfun::gamma_signed(1.0 - x);
    const double rhs = kPi / std::sin(kPi * x);
    worst_refl = std::max(worst_refl, std::abs(lhs - rhs) / std::abs(rhs));
  }
  ck.below("specfun.gamma.reflection", worst_refl, 1e-12);
}

void suite_closedform(Checker& ck) {
  using namespace closedform;
  ck.below("closedform.lambda_regular", std::abs(lambda_regular(1) + 0.75 * kPi2) + std::abs(lambda_regular(2)) +
                                            std::abs(lambda_regular(4) - 3.0 * kPi2),
           1e-12);
  ck.below("closedform.lambda_infinity",
           std::abs(lambda_infinity(1) - kPi2 / 4.0) + std::abs(lambda_infinity(3) - 2.25 * kPi2), 1e-12);
  ck.below("closedform.lambda_c0.beta_half", std::abs(lambda_c0(0.5 * kPi2, 1) + 0.75 * kPi2), 1e-12);
  ck.below("closedform.lambda_c0.beta_5_16", std::abs(lambda_c0(5.0 * kPi2 / 16.0, 1) + 7.0 * kPi2 / 16.0), 1e-12);

  for (double g : {0.55, 0.7, 0.9}) {
    const SnmPoint p = snm_curve(g);
    ck.below(tag("closedform.snm_consistency", g), std::abs(lambda_c0(p.beta, 1) + kPi2 * (1.0 - g * g)), 1e-12);
    ck.below(tag("closedform.gamma_recovery", g), std::abs(gamma_exponent(p.beta) - g), 1e-12);
  }

  // at beta = -pi^2/2 the regular spectrum takes over and the pairing is lost
  bool paired = true;
  for (double f : {-0.49, -0.3, 0.0, 0.2, 0.5}) {
    for (int k = 1; k <= 3; ++k) {
      paired = paired && lambda_c1(f * kPi2, 2 * k - 1) == lambda_c1(f * kPi2, 2 * k);
    }
  }
  ck.expect("closedform.lambda_c1.pairing", paired);

  const double beta_plus = (std::sqrt(3.0) - 1.0) * kPi2 / 4.0;
  for (double f : {0.1, 0.19, 0.25, 0.35, 0.45}) {
    const double beta = f * kPi2;
    const ExtendedReal d = dlambda1_dc_at_zero(beta);
    bool ok = false;
    if (beta <= beta_plus) {
      ok = d.is_finite() && d.value() <= 0.0;
    } else if (beta < 5.0 * kPi2 / 16.0) {
      ok = d.is_finite() && d.value() > 0.0;
    } else {
      ok = d.is_infinite();
    }
    ck.expect(tag("closedform.derivative_sign", f), ok, d.is_finite() ? d.value() : HUGE_VAL);
  }

  const EndpointValues ev = lambda_minus_at_endpoints(-0.2 * kPi2);
  ck.expect("closedform.endpoints.beta_neg", ev.at0 == 0.0 && ev.at1 == 0.0);

  const FlowProfile s = sinus_profile();
  for (double f : {0.1, 0.2, 0.45}) {
    const double beta = f * kPi2;
    const double lam = lambda_c0(beta, 1);
    double worst = 0.0;
    double scale = 0.0;
    for (int i = 1; i <= 101; ++i) {
      const double y = -1.0 + 2.0 * i / 102.0;
      const EigfunDerivs e = eigfun_c0_derivs(beta, 1, y);
      const double q = (beta - s.d2u(y)) / s.u(y);
      worst = std::max(worst, std::abs(-e.d2phi - q * e.phi - lam * e.phi));
      scale = std::max({scale, std::abs(e.d2phi), std::abs(lam * e.phi)});
    }
    ck.below(tag("closedform.eigfun_residual", f), worst / scale, 1e-8);
  }

  for (double f : {0.1, 0.25, 0.45}) {
    ck.guard(tag("closedform.cross_validation", f), [&] {
      const double beta = f * kPi2;
      const double exact = lambda_c0(beta, 1);
      const double far = std::abs(lambda1(beta, Speed::finite(-1e-4), 1e-8) - exact);
      const double near = std::abs(lambda1(beta, Speed::finite(-1e-5), 1e-8) - exact);
      ck.below(tag("closedform.cross_validation", f), near, 1e-3);
      ck.expect(tag("closedform.cross_validation_shrinks", f), near < far, near);
    });
  }
}

void suite_slsolver(Checker& ck) {
  const FlowProfile s = sinus_profile();
  bool ordered = true;
  bool nodes = true;
  double bound_gap = HUGE_VAL;
  ck.guard("slsolver.ordering_nodes", [&] {
    for (double f : {-0.5, 0.0, 0.5}) {
      for (double c : {-5.0, -0.3, 1.2, 4.0}) {
        const SLProblem p(s, f * kPi2, Speed::finite(c));
        const std::vector<double> lam = eigenvalues(p, 3, 1e-8);
        for (std::size_t n = 0; n < lam.size(); ++n) {
          const int idx = static_cast<int>(n) + 1;
          bound_gap = std::min(bound_gap, lam[n] - closedform::lambda_regular(idx));
          if (n > 0 && !(lam[n] > lam[n - 1])) {
            ordered = false;
          }
          try {
            nodes = nodes && eigenfunction(p, idx, 1e-8).nodes == idx - 1;
          } catch (const NodeCountMismatch&) {
            nodes = false;
          }
        }
      }
    }
    ck.expect("slsolver.ordering", ordered);
    ck.expect("slsolver.node_law", nodes);
    ck.above("slsolver.lower_bound", bound_gap, 0.0);
  });

  ck.guard("slsolver.monotonicity", [&] {
    const double betas[] = {-0.4, -0.2, 0.0, 0.2, 0.4};
    bool left_ok = true;
    bool right_ok = true;
    for (double c : {-3.0, -1.0, -0.5, -0.2, -0.05}) {
      double prev = HUGE_VAL;
      for (double f : betas) {
        const double v = lambda1(f * kPi2, Speed::finite(c), 1e-9);
        left_ok = left_ok && v < prev;
        prev = v;
      }
    }
    for (double c : {1.05, 1.2, 1.5, 2.0, 4.0}) {
      double prev = -HUGE_VAL;
      for (double f : betas) {
        const double v = lambda1(f * kPi2, Speed::finite(c), 1e-9);
        right_ok = right_ok && v > prev;
        prev = v;
      }
    }
    ck.expect("slsolver.monotonicity.left_decreasing", left_ok);
    ck.expect("slsolver.monotonicity.right_increasing", right_ok);
  });

  struct Sample {
    double f;
    double c;
    int n;
  };
  const Sample samples[] = {{0.3, -0.4, 1}, {0.25, -0.2, 1}, {-0.3, 1.4, 1}, {0.0, 2.0, 2},
                            {0.1, -1.0, 2}, {-0.45, 3.0, 1}, {0.45, -2.0, 3}, {-0.1, 1.1, 1}};
  for (const Sample& smp : samples) {
    const std::string name = "slsolver.derivatives@" + format_number(smp.f) + "," + format_number(smp.c) + "," +
                             std::to_string(smp.n);
    ck.guard(name, [&] {
      const double beta = smp.f * kPi2;
      const SLProblem p(s, beta, Speed::finite(smp.c));
      const EigenPair pair = eigenfunction(p, smp.n, 1e-10);
      const double h = 1e-4;
      const auto lam = [&](double b, double c) {
        return eigenvalues(SLProblem(s, b, Speed::finite(c)), smp.n, 1e-11).back();
      };
      const double fd_beta = (lam(beta + h, smp.c) - lam(beta - h, smp.c)) / (2.0 * h);
      const double fd_c = (lam(beta, smp.c + h) - lam(beta, smp.c - h)) / (2.0 * h);
      const double db = dlambda_dbeta(pair, p);
      const double dc = dlambda_dc(pair, p);
      const double err = std::max(std::abs(db - fd_beta) / std::max(std::abs(fd_beta), 1e-6),
                                  std::abs(dc - fd_c) / std::max(std::abs(fd_c), 1e-6));
      ck.below(name, err, 1e-4);
    });
  }

  ck.guard("slsolver.continuity_at_infinity", [&] {
    double worst = 0.0;
    double worst_fine = 0.0;
    for (double ct : {-1e-3, 1e-3}) {
      worst = std::max(worst, std::abs(lambda1(0.0, Speed::compactified(ct), 1e-9) - kPi2 / 4.0));
      worst_fine = std::max(worst_fine, std::abs(lambda1(0.0, Speed::compactified(ct / 10.0), 1e-9) - kPi2 / 4.0));
    }
    ck.below("slsolver.continuity_at_infinity", worst, 1e-3);
    // first-order approach: ten times closer for a ten times smaller ct
    ck.below("slsolver.continuity_at_infinity.rate", std::abs(worst / worst_fine - 10.0), 0.5);
  });

  ck.guard("slsolver.singular_limit", [&] {
    const double beta = 0.2 * kPi2;
    const double exact = closedform::lambda_c0(beta, 1);
    const double d3 = std::abs(lambda1(beta, Speed::finite(-1e-3), 1e-8) - exact);
    const double d4 = std::abs(lambda1(beta, Speed::finite(-1e-4), 1e-8) - exact);
    ck.expect("slsolver.singular_limit", d4 < d3, d4);
  });

  ck.guard("slsolver.closed_form_speeds", [&] {
    double worst = 0.0;
    for (double f : {-0.4, 0.0, 0.3}) {
      const std::vector<double> reg = eigenvalues(SLProblem(s, f * kPi2, Speed::finite(s.u_beta(f * kPi2))), 3, 1e-9);
      const std::vector<double> inf = eigenvalues(SLProblem(s, f * kPi2, Speed::infinity()), 3, 1e-9);
      for (int n = 1; n <= 3; ++n) {
        worst = std::max(worst, rel(reg[n - 1], closedform::lambda_regular(n)));
        worst = std::max(worst, rel(inf[n - 1], closedform::lambda_infinity(n)));
      }
    }
    ck.below("slsolver.closed_form_speeds", worst, 1e-8);
  });
}

void suite_dispersion(Checker& ck) {
  const FlowProfile s = sinus_profile();
  const cplx c0(0.4, 0.3);
  const cplx d = dispersion(s, 1.0, 0.2, c0);
  const cplx dc = dispersion(s, 1.0, 0.2, std::conj(c0));
  ck.below("dispersion.conjugate_symmetry", std::abs(dc - std::conj(d)) / std::abs(d), 1e-9);

  const double crit = 0.75 * kPi2;
  struct Cell {
    std::string name;
    double a2;
    double beta;
    int expect;
  };
  const double lm0 = closedform::lambda_minus_at_endpoints(0.45 * kPi2).at0;
  const Cell cells[] = {{"dispersion.count.unstable", 0.9 * crit, 0.0, 1},
                        {"dispersion.count.short_wave", 9.0, 0.0, 0},
                        {"dispersion.count.region_iii", 0.5 * lm0, 0.45 * kPi2, 0}};
  for (const Cell& cell : cells) {
    ck.guard(cell.name, [&] {
      const int k = count_unstable(s, std::sqrt(cell.a2), cell.beta);
      ck.expect(cell.name, k == cell.expect, k);
    });
  }

  ck.guard("dispersion.root", [&] {
    const std::optional<Mode> m = find_unstable_mode(s, 1.0, 0.0);
    ck.expect("dispersion.root.found", m.has_value());
    if (m) {
      ck.below("dispersion.root.residual", std::abs(dispersion(s, 1.0, 0.0, m->c)), 1e-8);
    }
  });

  ck.guard("dispersion.zero_wavenumber", [&] {
    const std::optional<Mode> m = find_unstable_mode(s, 0.0, -0.3 * kPi2);
    ck.expect("dispersion.zero_wavenumber.found", m && m->c.imag() > 0.0, m ? m->c.imag() : std::nan(""));
    if (m) {
      ck.below("dispersion.zero_wavenumber.ode_residual", m->residuals.ode, 1e-6);
    }
  });
}

void check_mode(Checker& ck, const std::string& name, const Mode& m) {
  const ModeResiduals r = verify_mode_identities(m);
  ck.below(name + ".ode", r.ode, 1e-6);
  ck.below(name + ".pedlosky", std::abs(r.identity2), 1e-6);
  ck.below(name + ".identity1", std::abs(r.identity1), 1e-6);
  ck.above(name + ".semicircle", r.semicircle_slack, -1e-8);
  ck.above(name + ".h1", r.h1_slack, -1e-8);
  ck.above(name + ".h2", r.h2_slack, -1e-8);
  ck.below(name + ".lform", std::abs(r.lform), 1e-5);
}

void suite_identities(Checker& ck) {
  const FlowProfile s = sinus_profile();
  const double crit = 0.75 * kPi2;
  const std::pair<double, double> cells[] = {{0.0, 0.5},  {-0.3, 0.2}, {0.1, 0.8},
                                             {0.25, 0.8}, {-0.45, 0.5}, {0.4, 0.8}};
  for (const auto& [f, a] : cells) {
    const std::string name = "identities.mode@" + format_number(f) + "," + format_number(a);
    ck.guard(name, [&] {
      const std::optional<Mode> m = find_unstable_mode(s, std::sqrt(a * crit), f * kPi2);
      ck.expect(name + ".found", m.has_value());
      if (m) {
        check_mode(ck, name, *m);
      }
    });
  }

  ck.guard("identities.census", [&] {
    const double beta = 0.4 * kPi2;
    const double big = capital_lambda(beta, 1e-8).capital_lambda;
    const double a2 = 0.5 * (closedform::lambda_minus_at_endpoints(beta).at0 + big);
    for (const CensusEntry& e : neutral_nonresonant_census(std::sqrt(a2), beta)) {
      const Mode m = build_mode(s, std::sqrt(a2), beta, cplx(e.c, 0.0), ModeKind::nonresonant_neutral);
      const double lhs = quadratic_form(m).via_identity.real();
      const double rhs = -(e.c - s.u_beta(beta)) * e.dlambda_dc;
      ck.below(tag("identities.census_derivative", e.c), std::abs(lhs - rhs) / std::abs(rhs), 1e-5);
    }
  });
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) {
    v.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
  }
  return v;
}

void suite_index(Checker& ck, std::array<int, 2> grid) {
  const double crit = 0.75 * kPi2;
  int ambiguous = 0;
  for (double f : linspace(-0.45, 0.45, grid[1])) {
    const double beta = f * kPi2;
    double big = 0.0;
    try {
      big = capital_lambda(beta, 1e-8).capital_lambda;
    } catch (const Error& e) {
      ck.expect(tag("index.capital_lambda", f), false);
      continue;
    }
    for (double a : linspace(0.1, 1.1, grid[0])) {
      const double a2 = a * crit;
      const std::string name = "index@" + format_number(f) + "," + format_number(a);
      try {
        const IndexCount ic = index_counts(std::sqrt(a2), beta);
        ck.expect(name + ".holds", ic.holds, ic.k_unstable + ic.k_i_nonpos - ic.n_minus);
        const int expect = (a2 > big && a2 < crit) ? 1 : 0;
        ck.expect(name + ".dichotomy", ic.k_unstable == expect, ic.k_unstable);
      } catch (const ContourAmbiguous&) {
        ++ambiguous;
      } catch (const Error& e) {
        ck.expect(name, false);
      }
    }
  }
  ck.below("index.ambiguous_cells", ambiguous, std::max(2, grid[0] * grid[1] / 8));
}

void suite_boundary(Checker& ck) {
  const double beta_minus = -4.06867;
  const double beta_plus = (std::sqrt(3.0) - 1.0) * kPi2 / 4.0;
  double big_048 = 0.0;
  double big_044 = 0.0;
  for (double f : {-0.48, -0.44, -0.3, 0.1, 0.3, 0.45}) {
    const double beta = f * kPi2;
    ck.guard(tag("boundary.case", f), [&] {
      const BoundaryPoint b = capital_lambda(beta, 1e-8);
      BoundaryCase want = BoundaryCase::zero;
      if (beta < beta_minus || beta > beta_plus) {
        want = BoundaryCase::interior_hump;
      } else if (beta > 0.0) {
        want = BoundaryCase::endpoint_monotone;
      }
      ck.expect(tag("boundary.case", f), b.kind == want, b.capital_lambda);
      ck.below(tag("boundary.below_critical", f), b.capital_lambda, 0.75 * kPi2);
      if (f == -0.48) {
        big_048 = b.capital_lambda;
      }
      if (f == -0.44) {
        big_044 = b.capital_lambda;
      }
      if (f == 0.1) {
        const double lm0 = closedform::lambda_minus_at_endpoints(beta).at0;
        ck.below("boundary.endpoint_value", std::abs(b.capital_lambda - lm0) + std::abs(b.c_star), 1e-12);
      }
    });
  }
  ck.expect("boundary.decreasing_below_beta_minus", big_048 > big_044, big_048 - big_044);

  for (double f : {0.3, -0.45}) {
    ck.guard(tag("boundary.unimodal", f), [&] {
      const double beta = f * kPi2;
      const std::vector<ProfilePoint> pts = lambda_beta_profile(beta, f > 0.0 ? Side::left : Side::right, 64);
      // lambda^- = max(0, -lambda_1) rises to a single peak and falls
      int turns = 0;
      int dir = 0;
      for (std::size_t i = 1; i < pts.size(); ++i) {
        const double step = std::max(0.0, -pts[i].lambda1) - std::max(0.0, -pts[i - 1].lambda1);
        if (std::abs(step) <= 1e-7) {
          continue;
        }
        const int d = step > 0.0 ? 1 : -1;
        if (dir != 0 && d != dir) {
          ++turns;
        }
        dir = d;
      }
      ck.below(tag("boundary.unimodal", f), turns, 1);
    });
  }
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"profiles",   "specfun", "closedform", "slsolver",
                                              "dispersion", "identities", "index",  "boundary"};
  return names;
}

VerifyReport cmd_verify(const RunConfig& config) {
  const std::vector<std::string>& names = suite_names();
  if (config.suite != "all" && std::find(names.begin(), names.end(), config.suite) == names.end()) {
    throw UsageError("unknown suite '" + config.suite + "'");
  }
  if (config.grid[0] < 1 || config.grid[1] < 1) {
    throw UsageError("--grid needs positive sizes");
  }
  VerifyReport report;
  report.suite = config.suite;
  Checker ck(report);
  const auto want = [&](const std::string& s) { return config.suite == "all" || config.suite == s; };
  if (want("profiles")) suite_profiles(ck);
  if (want("specfun")) suite_specfun(ck);
  if (want("closedform")) suite_closedform(ck);
  if (want("slsolver")) suite_slsolver(ck);
  if (want("dispersion")) suite_dispersion(ck);
  if (want("identities")) suite_identities(ck);
  if (want("index")) suite_index(ck, config.grid);
  if (want("boundary")) suite_boundary(ck);
  return report;
}

std::string report_json(const VerifyReport& report) {
  json details = json::array();
  for (const std::string& d : report.details) {
    details.push_back(json::parse(d));
  }
  const json doc = {{"details", details}, {"failed", report.failed}, {"passed", report.passed}, {"suite", report.suite}};
  return doc.dump(2) + "\n";
}

}  // namespace kuostab::cli
