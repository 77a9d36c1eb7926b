#include "kuostab/slsolver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "kuostab/errors.hpp"

namespace kuostab {

namespace {

constexpr int kFirstIntervals = 4096;
constexpr int kMaxIntervals = 1 << 22;

bool strictly_inside(double c, const FlowProfile& p) { return c > p.u_min && c < p.u_max; }

bool on_endpoint(double c, const FlowProfile& p) { return c == p.u_min || c == p.u_max; }

// Interior samples of -q on a grid with `intervals` uniform intervals.
std::vector<double> minus_potential(const SLProblem& problem, int intervals) {
  const FlowProfile& p = problem.profile;
  const double h = p.length() / intervals;
  std::vector<double> v(static_cast<std::size_t>(intervals - 1));
  for (int i = 1; i < intervals; ++i) {
    v[static_cast<std::size_t>(i - 1)] = -problem.potential(p.y1 + i * h);
  }
  return v;
}

// Number of eigenvalues of tridiag(-1, 2 + h2 v_i, -1)/h2 below lambda.
//
// The scaled pivots are carried as p = 1 + r; the deviation r stays O(h^2)
// away from eigenvalues, which keeps the recurrence free of the
// eps * N^2 drift of the plain pivot form.
int sturm_count(const std::vector<double>& v, double h2, double lambda) {
  int count = 0;
  double r = 1.0 + h2 * (v[0] - lambda);
  if (1.0 + r < 0.0) {
    ++count;
  }
  for (std::size_t i = 1; i < v.size(); ++i) {
    double p = 1.0 + r;
    if (p == 0.0) {
      p = 1e-300;
    }
    r = r / p + h2 * (v[i] - lambda);
    if (1.0 + r < 0.0) {
      ++count;
    }
  }
  return count;
}

struct Level {
  std::vector<double> v;
  double h = 0.0;
  double h2 = 0.0;
  double v_min = 0.0;
  double v_max = 0.0;
};

Level make_level(const SLProblem& problem, int intervals) {
  Level level;
  level.v = minus_potential(problem, intervals);
  level.h = problem.profile.length() / intervals;
  level.h2 = level.h * level.h;
  const auto [lo, hi] = std::minmax_element(level.v.begin(), level.v.end());
  level.v_min = *lo;
  level.v_max = *hi;
  return level;
}

double bisect(const Level& level, int n, double lo, double hi) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= 1e-14 * std::max(1.0, std::abs(mid)) || mid == lo || mid == hi) {
      break;
    }
    if (sturm_count(level.v, level.h2, mid) >= n) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double global_upper(const SLProblem& problem, const Level& level, int n) {
  const double k = n * std::numbers::pi / problem.profile.length();
  return level.v_max + k * k + 1.0;
}

double eigen_global(const SLProblem& problem, const Level& level, int n) {
  return bisect(level, n, level.v_min - 1.0, global_upper(problem, level, n));
}

// Bisection from a bracket around `guess`, widened until it holds eigenvalue n.
double eigen_near(const SLProblem& problem, const Level& level, int n, double guess, double width) {
  const double floor_lo = level.v_min - 1.0;
  const double ceil_hi = global_upper(problem, level, n);
  double lo = std::max(floor_lo, guess - width);
  double hi = std::min(ceil_hi, guess + width);
  while (lo > floor_lo && sturm_count(level.v, level.h2, lo) >= n) {
    width *= 4.0;
    lo = std::max(floor_lo, guess - width);
  }
  while (hi < ceil_hi && sturm_count(level.v, level.h2, hi) < n) {
    width *= 4.0;
    hi = std::min(ceil_hi, guess + width);
  }
  return bisect(level, n, lo, hi);
}

int count_nodes(const std::vector<double>& phi) {
  double peak = 0.0;
  for (double x : phi) {
    peak = std::max(peak, std::abs(x));
  }
  const double floor = 1e-9 * peak;
  int nodes = 0;
  int last_sign = 0;
  for (double x : phi) {
    if (std::abs(x) <= floor) {
      continue;
    }
    const int s = x > 0.0 ? 1 : -1;
    if (last_sign != 0 && s != last_sign) {
      ++nodes;
    }
    last_sign = s;
  }
  return nodes;
}

// Inverse iteration on the scaled system tridiag(-1, 2 + h2 (v_i - sigma), -1).
std::vector<double> inverse_iteration(const Level& level, double sigma) {
  const std::size_t m = level.v.size();
  std::vector<double> p(m);
  double r = 1.0 + level.h2 * (level.v[0] - sigma);
  for (std::size_t i = 0; i < m; ++i) {
    if (i > 0) {
      r = r / p[i - 1] + level.h2 * (level.v[i] - sigma);
    }
    p[i] = 1.0 + r;
    if (p[i] == 0.0) {
      p[i] = 1e-300;
    }
  }
  std::vector<double> x(m);
  for (std::size_t i = 0; i < m; ++i) {
    x[i] = 1.0 + 0.3 * std::sin(0.7 * static_cast<double>(i) + 0.1);
  }
  std::vector<double> z(m);
  for (int sweep = 0; sweep < 3; ++sweep) {
    z[0] = x[0];
    for (std::size_t i = 1; i < m; ++i) {
      z[i] = x[i] + z[i - 1] / p[i - 1];
    }
    x[m - 1] = z[m - 1] / p[m - 1];
    for (std::size_t i = m - 1; i-- > 0;) {
      x[i] = (z[i] + x[i + 1]) / p[i];
    }
    double peak = 0.0;
    for (double xi : x) {
      peak = std::max(peak, std::abs(xi));
    }
    for (double& xi : x) {
      xi /= peak;
    }
  }
  return x;
}

}  // namespace

SLProblem::SLProblem(FlowProfile p, double b, Speed s) : profile(std::move(p)), beta(b), speed(s) {
  if (speed.kind() == Speed::Kind::infinity) {
    return;
  }
  const double c_value = c();
  const bool beta_in_range = beta >= profile.upp_min && beta <= profile.upp_max;
  if (beta_in_range) {
    const double scale = std::max(1.0, profile.u_max - profile.u_min);
    removable_ = std::abs(c_value - profile.u_beta(beta)) <= 1e-12 * scale;
  }
  if (removable_) {
    return;
  }
  if (strictly_inside(c_value, profile)) {
    throw InvalidSpeed("c = " + std::to_string(c_value) + " lies inside Ran(U) and differs from U_beta");
  }
  if (on_endpoint(c_value, profile)) {
    throw InvalidSpeed("c = " + std::to_string(c_value) + " is a singular endpoint of Ran(U)");
  }
}

double SLProblem::c() const {
  switch (speed.kind()) {
    case Speed::Kind::finite:
      return speed.value();
    case Speed::Kind::compactified:
      return profile.u_mid() + 1.0 / speed.value();
    case Speed::Kind::infinity:
      break;
  }
  throw Error("SLProblem::c() called at c = infinity");
}

double SLProblem::ctilde() const {
  switch (speed.kind()) {
    case Speed::Kind::finite:
      return 1.0 / (speed.value() - profile.u_mid());
    case Speed::Kind::compactified:
      return speed.value();
    case Speed::Kind::infinity:
      break;
  }
  return 0.0;
}

double SLProblem::inverse_gap(double y) const {
  switch (speed.kind()) {
    case Speed::Kind::finite:
      return 1.0 / (profile.u(y) - speed.value());
    case Speed::Kind::compactified: {
      const double ct = speed.value();
      return ct / (ct * (profile.u(y) - profile.u_mid()) - 1.0);
    }
    case Speed::Kind::infinity:
      break;
  }
  return 0.0;
}

double SLProblem::potential(double y) const {
  if (removable_) {
    return profile.k_beta(beta, y);
  }
  return (beta - profile.d2u(y)) * inverse_gap(y);
}

double fd_eigenvalue(const SLProblem& problem, int n, int intervals) {
  if (n < 1 || intervals < 4) {
    throw Error("fd_eigenvalue: need n >= 1 and at least 4 intervals");
  }
  return eigen_global(problem, make_level(problem, intervals), n);
}

EigenvalueResult solve_eigenvalues(const SLProblem& problem, int n_max, double tol) {
  if (n_max < 1 || !(tol > 0.0)) {
    throw Error("eigenvalues: need n_max >= 1 and tol > 0");
  }
  const auto count = static_cast<std::size_t>(n_max);
  std::vector<double> prev(count);
  std::vector<double> step(count, 0.0);
  {
    const Level level = make_level(problem, kFirstIntervals);
    for (int k = 1; k <= n_max; ++k) {
      prev[static_cast<std::size_t>(k - 1)] = eigen_global(problem, level, k);
    }
  }
  for (int intervals = 2 * kFirstIntervals; intervals <= kMaxIntervals; intervals *= 2) {
    const Level level = make_level(problem, intervals);
    std::vector<double> raw(count);
    for (std::size_t k = 0; k < count; ++k) {
      const double scale = std::max(1.0, std::abs(prev[k]));
      const double guess = prev[k] - step[k] / 4.0;
      const double width = std::max(std::abs(step[k]), 1e-9 * scale);
      raw[k] = eigen_near(problem, level, static_cast<int>(k) + 1, guess, width);
    }
    EigenvalueResult result;
    result.intervals = intervals;
    bool converged = true;
    for (std::size_t k = 0; k < count; ++k) {
      const double rel = std::abs(raw[k] - prev[k]) / std::max(1.0, std::abs(prev[k]));
      result.est_error.push_back(rel);
      result.lambda.push_back((4.0 * raw[k] - prev[k]) / 3.0);
      converged = converged && rel < tol;
      step[k] = prev[k] - raw[k];
    }
    if (converged) {
      result.raw = raw;
      return result;
    }
    prev = raw;
  }
  throw NoConvergence("eigenvalues: grid reached 2^22 intervals without meeting tol");
}

std::vector<double> eigenvalues(const SLProblem& problem, int n_max, double tol) {
  return solve_eigenvalues(problem, n_max, tol).lambda;
}

EigenPair eigenfunction(const SLProblem& problem, int n, double tol) {
  const EigenvalueResult ev = solve_eigenvalues(problem, n, tol);
  const auto idx = static_cast<std::size_t>(n - 1);
  const Level level = make_level(problem, ev.intervals);
  const std::vector<double> interior = inverse_iteration(level, ev.raw[idx]);

  EigenPair pair;
  pair.n = n;
  pair.lambda = ev.lambda[idx];
  pair.est_error = ev.est_error[idx];
  pair.converged = true;
  const FlowProfile& p = problem.profile;
  const auto points = static_cast<std::size_t>(ev.intervals) + 1;
  pair.grid.resize(points);
  pair.phi.assign(points, 0.0);
  for (std::size_t i = 0; i < points; ++i) {
    pair.grid[i] = (i + 1 == points) ? p.y2 : p.y1 + static_cast<double>(i) * level.h;
  }
  std::copy(interior.begin(), interior.end(), pair.phi.begin() + 1);

  std::vector<double> squares(points);
  for (std::size_t i = 0; i < points; ++i) {
    squares[i] = pair.phi[i] * pair.phi[i];
  }
  const double norm = std::sqrt(trapezoid(squares, level.h));
  double peak = 0.0;
  for (double x : pair.phi) {
    peak = std::max(peak, std::abs(x));
  }
  double first = 0.0;
  for (double x : pair.phi) {
    if (std::abs(x) > 1e-9 * peak) {
      first = x;
      break;
    }
  }
  const double scale = (first < 0.0 ? -1.0 : 1.0) / norm;
  for (double& x : pair.phi) {
    x *= scale;
  }
  pair.nodes = count_nodes(pair.phi);
  if (pair.nodes != n - 1) {
    throw NodeCountMismatch("eigenfunction " + std::to_string(n) + " has " + std::to_string(pair.nodes) +
                            " nodes");
  }
  return pair;
}

double trapezoid(const std::vector<double>& values, double h) {
  if (values.size() < 2) {
    return 0.0;
  }
  double sum = 0.5 * (values.front() + values.back());
  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    sum += values[i];
  }
  return sum * h;
}

double dlambda_dbeta(const EigenPair& pair, const SLProblem& problem) {
  std::vector<double> f(pair.grid.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    f[i] = pair.phi[i] == 0.0 ? 0.0 : problem.inverse_gap(pair.grid[i]) * pair.phi[i] * pair.phi[i];
  }
  return -trapezoid(f, pair.grid[1] - pair.grid[0]);
}

double dlambda_dc(const EigenPair& pair, const SLProblem& problem) {
  std::vector<double> f(pair.grid.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (pair.phi[i] == 0.0) {
      f[i] = 0.0;
      continue;
    }
    const double y = pair.grid[i];
    const double g = problem.inverse_gap(y);
    f[i] = (problem.beta - problem.profile.d2u(y)) * g * g * pair.phi[i] * pair.phi[i];
  }
  return -trapezoid(f, pair.grid[1] - pair.grid[0]);
}

}  // namespace kuostab
