// Acceptance criteria A1..A10. Run with no arguments for all of them or
// with criterion names ("A3 A8") for a subset. One PASS/FAIL line each;
// exit status 1 if any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kuostab/cli.hpp"
#include "kuostab/closedform.hpp"
#include "kuostab/dispersion.hpp"
#include "kuostab/errors.hpp"
#include "kuostab/slsolver.hpp"
#include "kuostab/stability.hpp"

using namespace kuostab;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;
constexpr double kCrit = 0.75 * kPi2;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::string note;

  void fail(const std::string& why) {
    pass = false;
    note += (note.empty() ? "" : "; ") + why;
  }
  void info(const std::string& what) { note += (note.empty() ? "" : "; ") + what; }
};

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

const double kBetas[] = {-0.45, -0.3, -0.1, 0.1, 0.25, 0.4};
const double kAlphas[] = {0.2, 0.5, 0.8, 1.05};

// Lambda_beta for the A4 grid rows, computed once.
const std::vector<double>& grid_lambdas() {
  static const std::vector<double> v = [] {
    std::vector<double> out;
    for (double f : kBetas) {
      out.push_back(capital_lambda(f * kPi2, 1e-8).capital_lambda);
    }
    return out;
  }();
  return v;
}

Outcome a1() {
  Outcome o;
  const auto t0 = Clock::now();
  const FlowProfile s = sinus_profile();
  const double beta = 0.0;
  const std::vector<double> reg = eigenvalues(SLProblem(s, beta, Speed::finite(s.u_beta(beta))), 3, 1e-10);
  double worst_reg = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const double exact = closedform::lambda_regular(n);
    worst_reg = std::max(worst_reg, std::abs(reg[n - 1] - exact) / std::max(1.0, std::abs(exact)));
  }
  o.info(fmt("U_beta max rel err %.2e", worst_reg));
  if (!(worst_reg < 1e-8)) {
    o.fail("U_beta spectrum off");
  }
  double worst_inf = 0.0;
  for (double ct : {-1e-6, 1e-6}) {
    const std::vector<double> v = eigenvalues(SLProblem(s, beta, Speed::compactified(ct)), 3, 1e-10);
    for (int n = 1; n <= 3; ++n) {
      const double exact = closedform::lambda_infinity(n);
      worst_inf = std::max(worst_inf, std::abs(v[n - 1] - exact) / exact);
    }
  }
  o.info(fmt("ctilde=+-1e-6 max rel err %.2e", worst_inf));
  if (!(worst_inf < 1e-8)) {
    o.fail("ctilde=+-1e-6 outside 1e-8 (first-order shift ctilde*(beta+pi^2/4) for n=1)");
  }
  const double t = seconds_since(t0);
  o.info(fmt("%.2fs", t));
  if (t >= 5.0) {
    o.fail("runtime");
  }
  return o;
}

Outcome a2() {
  Outcome o;
  const auto t0 = Clock::now();
  const double b = find_beta_minus(1e-6);
  const double t = seconds_since(t0);
  o.info(fmt("beta_minus = %.6f (%.4f pi^2)", b, b / kPi2));
  o.info(fmt("%.1fs", t));
  if (!(std::abs(b + 4.06867) <= 5e-3)) {
    o.fail("beta_minus off");
  }
  if (t >= 120.0) {
    o.fail("runtime");
  }
  return o;
}

Outcome a3() {
  struct Row {
    double sqrt_lambda;
    double difference;
    double c_star;
  };
  const Row reference[] = {{1.57080, 0.0, 0.0},         {1.90050, 0.000004894, -0.00003}, {1.99395, 0.000014579, -0.00006},
                       {2.06795, 0.000029048, -0.00009}, {2.13593, 0.000049360, -0.00012}, {2.20585, 0.000078511, -0.00015},
                       {2.29388, 0.000126720, -0.00018}, {2.45904, 0.000222321, -0.00018}, {2.52328, 0.000233368, -0.00015},
                       {2.56575, 0.000219151, -0.00012}, {2.60097, 0.000188895, -0.00009}, {2.63332, 0.000144032, -0.00006},
                       {2.66631, 0.000083277, -0.00003}, {2.72070, 0.0, 0.0}};
  Outcome o;
  const auto t0 = Clock::now();
  const std::vector<double>& betas = cli::table1_betas();
  const std::vector<BoundaryPoint> pts = boundary_sweep(betas, 1e-8);
  double worst_sqrt = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const BoundaryPoint& b = pts[i];
    const Row& p = reference[i];
    const double diff = b.alpha_lower - b.snm_alpha;
    worst_sqrt = std::max(worst_sqrt, std::abs(b.alpha_lower - p.sqrt_lambda));
    std::printf("    beta %.5f  sqrt %.6f (ref %.5f)  diff %.3e (ref %.3e)  c* %.2e (ref %.0e)  %s\n", b.beta,
                b.alpha_lower, p.sqrt_lambda, diff, p.difference, b.c_star, p.c_star, to_string(b.kind));
    const std::string row = fmt("row beta=%.5f", b.beta);
    if (!(std::abs(b.alpha_lower - p.sqrt_lambda) <= 1e-4)) {
      o.fail(row + " sqrt");
    }
    if (!(std::abs(diff - p.difference) <= std::max(0.25 * std::abs(p.difference), 2e-5))) {
      o.fail(row + " difference");
    }
    if (p.c_star != 0.0) {
      const double ratio = b.c_star / p.c_star;
      if (!(ratio >= 1.0 / 3.0 && ratio <= 3.0)) {
        o.fail(row + " c*");
      }
    }
  }
  const double t = seconds_since(t0);
  o.info(fmt("max |sqrt err| %.2e", worst_sqrt));
  o.info(fmt("%.1fs", t));
  if (t >= 600.0) {
    o.fail("runtime");
  }
  return o;
}

Outcome a4() {
  Outcome o;
  const auto t0 = Clock::now();
  const std::vector<double>& lambdas = grid_lambdas();
  int ambiguous = 0;
  int checked = 0;
  for (std::size_t i = 0; i < std::size(kBetas); ++i) {
    for (double a : kAlphas) {
      const double a2 = a * kCrit;
      const int expect = (a2 > lambdas[i] && a2 < kCrit) ? 1 : 0;
      try {
        const int k = count_unstable(sinus_profile(), std::sqrt(a2), kBetas[i] * kPi2);
        ++checked;
        if (k != expect) {
          o.fail(fmt("beta=%.2f pi^2 alpha^2=%.2f crit", kBetas[i], a) + fmt(": count %g expected %g", k, expect));
        }
      } catch (const ContourAmbiguous&) {
        ++ambiguous;
      }
    }
  }
  const double t = seconds_since(t0);
  o.info(fmt("%g cells checked, %g ambiguous", checked, ambiguous));
  o.info(fmt("%.1fs", t));
  if (ambiguous > 2) {
    o.fail("too many ambiguous cells");
  }
  if (t >= 600.0) {
    o.fail("runtime");
  }
  return o;
}

Outcome a5() {
  Outcome o;
  int checked = 0;
  for (double f : kBetas) {
    for (double a : kAlphas) {
      try {
        const IndexCount ic = index_counts(std::sqrt(a * kCrit), f * kPi2);
        ++checked;
        if (!ic.holds) {
          o.fail(fmt("beta=%.2f pi^2 alpha^2=%.2f crit", f, a) +
                 fmt(": k_u+k_i=%g n_minus=%g", ic.k_unstable + ic.k_i_nonpos, ic.n_minus));
        }
      } catch (const ContourAmbiguous&) {
      }
    }
  }
  o.info(fmt("%g cells", checked));
  return o;
}

Outcome a6() {
  Outcome o;
  const std::vector<double>& lambdas = grid_lambdas();
  int modes = 0;
  for (std::size_t i = 0; i < std::size(kBetas); ++i) {
    for (double a : kAlphas) {
      const double a2 = a * kCrit;
      if (!(a2 > lambdas[i] && a2 < kCrit)) {
        continue;
      }
      const std::string cell = fmt("beta=%.2f pi^2 alpha^2=%.2f crit", kBetas[i], a);
      const std::optional<Mode> m = find_unstable_mode(sinus_profile(), std::sqrt(a2), kBetas[i] * kPi2);
      if (!m) {
        o.fail(cell + ": no mode");
        continue;
      }
      ++modes;
      const ModeResiduals r = verify_mode_identities(*m);
      if (!(std::abs(r.identity2) < 1e-6)) o.fail(cell + fmt(": Pedlosky %.1e", r.identity2));
      if (!(r.semicircle_slack >= -1e-8)) o.fail(cell + ": semicircle");
      if (!(r.h1_slack >= -1e-8)) o.fail(cell + ": H1");
      if (!(r.h2_slack >= -1e-8)) o.fail(cell + ": H2");
      if (!(std::abs(r.lform) < 1e-5)) o.fail(cell + fmt(": <L w, w> %.1e", r.lform));
    }
  }
  o.info(fmt("%g modes", modes));
  if (modes == 0) {
    o.fail("no modes");
  }
  return o;
}

Outcome a7() {
  Outcome o;
  const FlowProfile s = sinus_profile();
  struct Sample {
    double f;
    double c;
    int n;
  };
  const Sample samples[] = {{0.3, -0.4, 1}, {0.25, -0.2, 1}, {-0.3, 1.4, 1}, {0.0, 2.0, 2},
                            {0.1, -1.0, 2}, {-0.45, 3.0, 1}, {0.45, -2.0, 3}, {-0.1, 1.1, 1}};
  double worst = 0.0;
  for (const Sample& smp : samples) {
    const double beta = smp.f * kPi2;
    const SLProblem p(s, beta, Speed::finite(smp.c));
    const EigenPair pair = eigenfunction(p, smp.n, 1e-10);
    const double h = 1e-4;
    const auto lam = [&](double b, double c) {
      return eigenvalues(SLProblem(s, b, Speed::finite(c)), smp.n, 1e-11).back();
    };
    const double fd_beta = (lam(beta + h, smp.c) - lam(beta - h, smp.c)) / (2.0 * h);
    const double fd_c = (lam(beta, smp.c + h) - lam(beta, smp.c - h)) / (2.0 * h);
    worst = std::max(worst, std::abs(dlambda_dbeta(pair, p) - fd_beta) / std::abs(fd_beta));
    worst = std::max(worst, std::abs(dlambda_dc(pair, p) - fd_c) / std::abs(fd_c));
  }
  o.info(fmt("max rel err %.2e", worst));
  if (!(worst < 1e-4)) {
    o.fail("derivative formulas");
  }
  const double beta_plus = (std::sqrt(3.0) - 1.0) * kPi2 / 4.0;
  for (double f : {0.1, 0.19, 0.25, 0.35, 0.45}) {
    const double beta = f * kPi2;
    const ExtendedReal d = closedform::dlambda1_dc_at_zero(beta);
    bool ok = false;
    if (beta <= beta_plus) {
      ok = d.is_finite() && d.value() <= 0.0;
    } else if (beta < 5.0 * kPi2 / 16.0) {
      ok = d.is_finite() && d.value() > 0.0;
    } else {
      ok = d.is_infinite();
    }
    if (!ok) {
      o.fail(fmt("sign pattern at %.2f pi^2", f));
    }
  }
  return o;
}

Outcome a8() {
  Outcome o;
  const auto count = [](const std::vector<CensusEntry>& e, auto pred) {
    return static_cast<int>(std::count_if(e.begin(), e.end(), [&](const CensusEntry& x) { return pred(x.c); }));
  };
  {
    const double beta = 0.4 * kPi2;
    const double a2 = 0.5 * (closedform::lambda_minus_at_endpoints(beta).at0 + capital_lambda(beta, 1e-8).capital_lambda);
    const std::vector<CensusEntry> e = neutral_nonresonant_census(std::sqrt(a2), beta);
    const int left = count(e, [](double c) { return c < 0.0; });
    o.info(fmt("II: %g entries, %g with c < 0", static_cast<double>(e.size()), left));
    if (!(e.size() == 2 && left == 2)) {
      o.fail("region II");
    }
  }
  {
    const double beta = -0.45 * kPi2;
    const double a2 = 0.5 * capital_lambda(beta, 1e-8).capital_lambda;
    const std::vector<CensusEntry> e = neutral_nonresonant_census(std::sqrt(a2), beta);
    const int right = count(e, [](double c) { return c > 1.0; });
    o.info(fmt("IV: %g entries, %g with c > 1", static_cast<double>(e.size()), right));
    if (!(e.size() == 2 && right == 2)) {
      o.fail("region IV");
    }
  }
  {
    const double beta = 0.45 * kPi2;
    const double a2 = 0.5 * closedform::lambda_minus_at_endpoints(beta).at0;
    const std::vector<CensusEntry> e = neutral_nonresonant_census(std::sqrt(a2), beta);
    o.info(fmt("III: %g entries", static_cast<double>(e.size())));
    if (e.size() != 1) {
      o.fail("region III");
    }
  }
  return o;
}

Outcome a9() {
  Outcome o;
  const std::optional<Mode> m = find_unstable_mode(sinus_profile(), 0.0, -0.3 * kPi2);
  if (!m) {
    o.fail("no mode");
    return o;
  }
  o.info(fmt("c = %.6f + %.6fi", m->c.real(), m->c.imag()));
  o.info(fmt("ode residual %.1e", m->residuals.ode));
  if (!(m->c.imag() > 0.0)) o.fail("Im c");
  if (!(m->residuals.ode < 1e-6)) o.fail("residual");
  return o;
}

std::string run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "kuostab");
  std::vector<const char*> argv;
  for (const std::string& a : args) {
    argv.push_back(a.c_str());
  }
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return std::to_string(code) + "\n" + out.str();
}

Outcome a10() {
  Outcome o;
  // required property checks inside the suites
  const auto required = [](const std::string& name) {
    return name.rfind("specfun.", 0) == 0 || name == "slsolver.ordering" || name == "slsolver.node_law" ||
           name.rfind("slsolver.monotonicity", 0) == 0;
  };
  const auto t0 = Clock::now();
  cli::RunConfig config;
  config.command = cli::Command::verify;
  const cli::VerifyReport all = cli::cmd_verify(config);
  const double t = seconds_since(t0);
  int needed = 0;
  for (std::size_t i = 0; i < all.names.size(); ++i) {
    if (!required(all.names[i])) {
      continue;
    }
    ++needed;
    if (all.details[i].find("\"passed\":true") == std::string::npos) {
      o.fail(all.names[i]);
    }
  }
  o.info(fmt("%g property checks", needed));
  o.info(fmt("full verify: %g passed, %g failed", all.passed, all.failed));
  for (std::size_t i = 0; i < all.names.size(); ++i) {
    if (all.details[i].find("\"passed\":false") != std::string::npos) {
      std::printf("    verify failure (not part of A10): %s\n", all.details[i].c_str());
    }
  }
  if (needed == 0) {
    o.fail("no property checks ran");
  }

  const std::vector<std::vector<std::string>> commands = {
      {"eigen", "--beta", "0", "--c", "2", "--nmax", "3"},
      {"contour", "--beta-range", "-4:4:3", "--ctilde-range", "-2:2:5"},
      {"growthmap", "--alpha-range", "0:3:3", "--beta-range", "-2:2:2"},
      {"boundary", "--beta-range", "2.6065:2.6065:1"}};
  for (const auto& cmd : commands) {
    auto one = cmd;
    one.insert(one.end(), {"--threads", "1"});
    auto many = cmd;
    many.insert(many.end(), {"--threads", "4"});
    const std::string first = run_cli(one);
    if (first != run_cli(many) || first != run_cli(one)) {
      o.fail("nondeterministic " + cmd.front());
    }
  }
  o.info(fmt("full verify %.1fs", t));
  if (t >= 1200.0) {
    o.fail("runtime");
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"A1", a1}, {"A2", a2}, {"A3", a3}, {"A4", a4}, {"A5", a5},
      {"A6", a6}, {"A7", a7}, {"A8", a8}, {"A9", a9}, {"A10", a10}};
  std::vector<std::string> wanted(argv + 1, argv + argc);
  bool all_pass = true;
  for (const auto& [name, check] : criteria) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), name) == wanted.end()) {
      continue;
    }
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    all_pass = all_pass && o.pass;
    std::printf("%-4s %s  %s\n", name.c_str(), o.pass ? "PASS" : "FAIL", o.note.c_str());
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}
