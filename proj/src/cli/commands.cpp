#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"

#include "kuostab/cli.hpp"
#include "kuostab/closedform.hpp"
#include "kuostab/dispersion.hpp"
#include "kuostab/parallel.hpp"
#include "kuostab/profiles.hpp"
#include "kuostab/slsolver.hpp"
#include "kuostab/stability.hpp"

namespace kuostab::cli {

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

FlowProfile lookup_profile(const std::string& name) {
  std::optional<FlowProfile> p = profile_by_name(name);
  if (!p) {
    throw UsageError("unknown profile '" + name + "'");
  }
  return *p;
}

void require_sinus(const RunConfig& config, const char* command) {
  if (config.profile != "sinus") {
    throw UsageError(std::string(command) + " is only available for the sinus profile");
  }
}

const Range& require_range(const std::optional<Range>& r, const char* flag) {
  if (!r) {
    throw UsageError(std::string("missing ") + flag);
  }
  return *r;
}

// Which closed-form family a Sinus speed sits on, if any.
enum class Curve { none, regular, infinity, zero, one };

Curve sinus_curve(double beta, const Speed& speed) {
  const FlowProfile s = sinus_profile();
  switch (speed.kind()) {
    case Speed::Kind::infinity:
      return Curve::infinity;
    case Speed::Kind::compactified: {
      const double ct = speed.value();
      if (std::abs(ct + 2.0) <= 1e-12) return Curve::zero;
      if (std::abs(ct - 2.0) <= 1e-12) return Curve::one;
      if (beta >= s.upp_min && beta <= s.upp_max && std::abs(1.0 / ct + s.u_mid() - s.u_beta(beta)) <= 1e-12) {
        return Curve::regular;
      }
      return Curve::none;
    }
    case Speed::Kind::finite: {
      const double c = speed.value();
      if (beta >= s.upp_min && beta <= s.upp_max && std::abs(c - s.u_beta(beta)) <= 1e-12) {
        return Curve::regular;
      }
      if (c == 0.0) return Curve::zero;
      if (c == 1.0) return Curve::one;
      return Curve::none;
    }
  }
  return Curve::none;
}

double closed_value(Curve curve, double beta, int n) {
  switch (curve) {
    case Curve::regular:
      return closedform::lambda_regular(n);
    case Curve::infinity:
      return closedform::lambda_infinity(n);
    case Curve::zero:
      return closedform::lambda_c0(beta, n);
    case Curve::one:
      return closedform::lambda_c1(beta, n);
    case Curve::none:
      break;
  }
  return kNaN;
}

}  // namespace

std::vector<double> Range::values() const {
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    v.push_back(n == 1 ? lo : (i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1)));
  }
  return v;
}

Range parse_range(const std::string& text) {
  std::istringstream is(text);
  Range r;
  char c1 = 0;
  char c2 = 0;
  if (!(is >> r.lo >> c1 >> r.hi >> c2 >> r.n) || c1 != ':' || c2 != ':' || !is.eof() || r.n < 1) {
    throw UsageError("bad range '" + text + "', expected a:b:n with n >= 1");
  }
  return r;
}

const std::vector<double>& table1_betas() {
  static const std::vector<double> betas{1.80626, 2.60650, 2.85444, 3.05645, 3.24603, 3.44449, 3.69853,
                                         4.18261, 4.37126, 4.49531, 4.59739, 4.69034, 4.78396, 4.93480};
  return betas;
}

Table cmd_eigen(const RunConfig& config) {
  const FlowProfile profile = lookup_profile(config.profile);
  const int chosen = static_cast<int>(config.c.has_value()) + static_cast<int>(config.ctilde.has_value()) +
                     static_cast<int>(config.c_inf) + static_cast<int>(config.c_ubeta);
  if (chosen != 1) {
    throw UsageError("eigen needs exactly one of --c, --ctilde, --c-inf, --c-ubeta");
  }
  if (config.nmax < 1) {
    throw UsageError("--nmax must be >= 1");
  }
  Speed speed = Speed::infinity();
  if (config.c) {
    speed = Speed::finite(*config.c);
  } else if (config.ctilde) {
    speed = Speed::compactified(*config.ctilde);
  } else if (config.c_ubeta) {
    profile.require_beta_in_range(config.beta);
    speed = Speed::finite(profile.u_beta(config.beta));
  }

  const Curve curve = profile.name == "sinus" ? sinus_curve(config.beta, speed) : Curve::none;
  Table t;
  t.columns = {"n", "lambda", "est_error"};
  if (curve != Curve::none) {
    t.columns.emplace_back("closed_form");
  }
  if (curve == Curve::zero || curve == Curve::one) {
    // singular endpoint: only the closed form exists
    for (int n = 1; n <= config.nmax; ++n) {
      const double v = closed_value(curve, config.beta, n);
      t.rows.push_back({static_cast<long long>(n), v, 0.0, v});
    }
    return t;
  }
  const EigenvalueResult r = solve_eigenvalues(SLProblem(profile, config.beta, speed), config.nmax, config.tol);
  for (int n = 1; n <= config.nmax; ++n) {
    const auto i = static_cast<std::size_t>(n - 1);
    std::vector<Cell> row{static_cast<long long>(n), r.lambda[i], r.est_error[i]};
    if (curve != Curve::none) {
      row.emplace_back(closed_value(curve, config.beta, n));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table cmd_contour(const RunConfig& config) {
  require_sinus(config, "contour");
  const std::vector<double> betas = require_range(config.beta_range, "--beta-range").values();
  const std::vector<double> cts = require_range(config.ctilde_range, "--ctilde-range").values();
  for (double ct : cts) {
    if (std::abs(ct) > 2.0 + 1e-12) {
      throw UsageError("--ctilde-range must stay within [-2, 2]");
    }
  }
  const FlowProfile s = sinus_profile();
  const std::size_t m = cts.size();
  const std::vector<double> values = parallel_map(
      betas.size() * m,
      [&](std::size_t i) {
        const double beta = betas[i / m];
        const Speed speed = Speed::compactified(cts[i % m]);
        const Curve curve = sinus_curve(beta, speed);
        if (curve == Curve::zero || curve == Curve::one) {
          return closed_value(curve, beta, 1);
        }
        return eigenvalues(SLProblem(s, beta, speed), 1, config.tol).front();
      },
      config.threads);
  Table t;
  t.columns = {"beta", "ctilde", "c", "lambda1"};
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double ct = cts[i % m];
    const double c = ct == 0.0 ? std::numeric_limits<double>::infinity() : s.u_mid() + 1.0 / ct;
    t.rows.push_back({betas[i / m], ct, c, values[i]});
  }
  return t;
}

Table cmd_boundary(const RunConfig& config) {
  require_sinus(config, "boundary");
  std::vector<double> betas;
  if (config.table1) {
    betas = table1_betas();
  } else {
    betas = require_range(config.beta_range, "--beta-range or --table1").values();
  }
  for (double b : betas) {
    if (!(std::abs(b) < 0.5 * kPi2)) {
      throw UsageError("boundary needs beta in (-pi^2/2, pi^2/2)");
    }
  }
  Table t;
  t.columns = {"beta", "sqrt_lambda", "c_star", "snm_alpha", "difference", "case"};
  for (const BoundaryPoint& b : boundary_sweep(betas, config.tol, config.threads)) {
    t.rows.push_back({b.beta, b.alpha_lower, b.c_star, b.snm_alpha, b.alpha_lower - b.snm_alpha,
                      std::string(to_string(b.kind))});
  }
  return t;
}

Table cmd_growthmap(const RunConfig& config) {
  const FlowProfile profile = lookup_profile(config.profile);
  const std::vector<double> alphas = require_range(config.alpha_range, "--alpha-range").values();
  const std::vector<double> betas = require_range(config.beta_range, "--beta-range").values();
  for (double a : alphas) {
    if (a < 0.0) {
      throw UsageError("--alpha-range must be non-negative");
    }
  }
  struct Found {
    cplx c{kNaN, kNaN};
    int state = 0;  // 0 none, 1 found, 2 ambiguous
  };
  const std::size_t m = betas.size();
  const std::vector<Found> cells = parallel_map(
      alphas.size() * m,
      [&](std::size_t i) {
        Found f;
        try {
          if (const std::optional<Mode> mode = find_unstable_mode(profile, alphas[i / m], betas[i % m])) {
            f.c = mode->c;
            f.state = 1;
          }
        } catch (const ContourAmbiguous&) {
          f.state = 2;
        }
        return f;
      },
      config.threads);
  Table t;
  t.columns = {"alpha", "beta", "c_re", "c_im", "found"};
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Found& f = cells[i];
    Cell found = f.state == 2 ? Cell(std::string("boundary")) : Cell(static_cast<long long>(f.state));
    t.rows.push_back({alphas[i / m], betas[i % m], f.c.real(), f.c.imag(), found});
  }
  return t;
}

int run(const RunConfig& config, std::ostream& fallback, std::ostream& err) {
  try {
    if (!(config.tol > 0.0)) {
      throw UsageError("--tol must be positive");
    }
    if (config.emit_plot && (config.out.empty() || config.command == Command::verify)) {
      throw UsageError("--emit-plot needs --out and a table command");
    }
    set_default_threads(config.threads);

    std::ofstream file;
    if (!config.out.empty()) {
      file.open(config.out, std::ios::binary);
      if (!file) {
        throw UsageError("cannot write '" + config.out + "'");
      }
    }
    std::ostream& os = config.out.empty() ? fallback : file;

    if (config.command == Command::verify) {
      const VerifyReport report = cmd_verify(config);
      os << report_json(report);
      return report.failed == 0 ? exit_ok : exit_verify_failed;
    }

    Table table;
    switch (config.command) {
      case Command::eigen:
        table = cmd_eigen(config);
        break;
      case Command::contour:
        table = cmd_contour(config);
        break;
      case Command::boundary:
        table = cmd_boundary(config);
        break;
      case Command::growthmap:
        table = cmd_growthmap(config);
        break;
      case Command::verify:
        break;
    }
    if (config.format == Format::json) {
      write_json(os, table);
    } else {
      write_csv(os, table);
    }
    if (config.emit_plot) {
      std::ofstream gp(config.out + ".gp", std::ios::binary);
      gp << gnuplot_script(config.command, table, config.out);
    }
    return exit_ok;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const BetaOutOfRange& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const InvalidSpeed& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const GammaOutOfRange& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const UnsupportedIndex& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const Error& e) {
    err << "numeric failure: " << e.what() << '\n';
    return exit_numeric;
  }
}

namespace {

void add_common(CLI::App* sub, RunConfig& config, std::string& format) {
  sub->add_option("--profile", config.profile, "flow profile (sinus, tanh)")->capture_default_str();
  sub->add_option("--tol", config.tol, "eigenvalue tolerance")->capture_default_str();
  sub->add_option("--out", config.out, "output file (default stdout)");
  sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  sub->add_option("--threads", config.threads, "worker threads, 0 = auto (KUO_STAB_THREADS overrides)")
      ->check(CLI::NonNegativeNumber);
  sub->add_flag("--emit-plot", config.emit_plot, "also write a gnuplot script next to --out");
}

}  // namespace

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rayleigh-Kuo stability of the Sinus flow"};
  app.require_subcommand(1);
  RunConfig config;
  std::string format = "csv";
  std::string beta_range;
  std::string ctilde_range;
  std::string alpha_range;
  std::string grid = "6x6";
  double c = 0.0;
  double ctilde = 0.0;

  CLI::App* eigen = app.add_subcommand("eigen", "eigenvalues lambda_1..lambda_nmax at one speed");
  add_common(eigen, config, format);
  eigen->add_option("--beta", config.beta, "beta")->required();
  auto* oc = eigen->add_option("--c", c, "finite phase speed");
  auto* oct = eigen->add_option("--ctilde", ctilde, "compactified speed 1/(c - 1/2)");
  auto* oinf = eigen->add_flag("--c-inf", config.c_inf, "c = infinity");
  auto* oub = eigen->add_flag("--c-ubeta", config.c_ubeta, "c = U_beta");
  oc->excludes(oct)->excludes(oinf)->excludes(oub);
  oct->excludes(oinf)->excludes(oub);
  oinf->excludes(oub);
  eigen->add_option("--nmax", config.nmax, "number of eigenvalues")->capture_default_str();

  CLI::App* contour = app.add_subcommand("contour", "lambda_1 over a (beta, ctilde) grid");
  add_common(contour, config, format);
  contour->add_option("--beta-range", beta_range, "a:b:n")->required();
  contour->add_option("--ctilde-range", ctilde_range, "a:b:m within [-2, 2]")->required();

  CLI::App* boundary = app.add_subcommand("boundary", "stability boundary Lambda_beta");
  add_common(boundary, config, format);
  auto* obr = boundary->add_option("--beta-range", beta_range, "a:b:n");
  auto* ot1 = boundary->add_flag("--table1", config.table1, "the 14 reference beta values");
  obr->excludes(ot1);

  CLI::App* growth = app.add_subcommand("growthmap", "unstable phase speed over an (alpha, beta) grid");
  add_common(growth, config, format);
  growth->add_option("--alpha-range", alpha_range, "a:b:n")->required();
  growth->add_option("--beta-range", beta_range, "a:b:n")->required();

  CLI::App* verify = app.add_subcommand("verify", "property suites, JSON report");
  add_common(verify, config, format);
  verify->add_option("--suite", config.suite, "suite name or all")->capture_default_str();
  verify->add_option("--grid", grid, "alpha x beta points for the index suite")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*eigen) {
      config.command = Command::eigen;
      if (*oc) config.c = c;
      if (*oct) config.ctilde = ctilde;
    } else if (*contour) {
      config.command = Command::contour;
    } else if (*boundary) {
      config.command = Command::boundary;
    } else if (*growth) {
      config.command = Command::growthmap;
    } else {
      config.command = Command::verify;
      int na = 0;
      int nb = 0;
      char x = 0;
      std::istringstream is(grid);
      if (!(is >> na >> x >> nb) || x != 'x' || !is.eof() || na < 1 || nb < 1) {
        throw UsageError("bad --grid '" + grid + "', expected AxB");
      }
      config.grid = {na, nb};
    }
    config.format = format == "json" ? Format::json : Format::csv;
    if (!beta_range.empty()) config.beta_range = parse_range(beta_range);
    if (!ctilde_range.empty()) config.ctilde_range = parse_range(ctilde_range);
    if (!alpha_range.empty()) config.alpha_range = parse_range(alpha_range);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
  return run(config, out, err);
}

}  // namespace kuostab::cli
