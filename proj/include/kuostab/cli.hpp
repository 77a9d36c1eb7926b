#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kuostab/errors.hpp"

namespace kuostab::cli {

/// Bad flag values detected after parsing; maps to exit status 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

enum class Command { eigen, contour, boundary, growthmap, verify };
enum class Format { csv, json };

inline constexpr int exit_ok = 0;
inline constexpr int exit_verify_failed = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_numeric = 3;

/// n evenly spaced values from lo to hi inclusive, written "lo:hi:n".
struct Range {
  double lo = 0.0;
  double hi = 0.0;
  int n = 1;

  [[nodiscard]] std::vector<double> values() const;
};

Range parse_range(const std::string& text);

struct RunConfig {
  Command command = Command::eigen;
  std::string profile = "sinus";

  // eigen
  double beta = 0.0;
  std::optional<double> c;
  std::optional<double> ctilde;
  bool c_inf = false;
  bool c_ubeta = false;
  int nmax = 1;

  // grids
  std::optional<Range> beta_range;
  std::optional<Range> ctilde_range;
  std::optional<Range> alpha_range;
  bool table1 = false;

  // verify
  std::string suite = "all";
  std::array<int, 2> grid{6, 6};

  double tol = 1e-8;
  std::string out;
  Format format = Format::csv;
  int threads = 0;
  bool emit_plot = false;
};

/// One CSV/JSON table. Cells are numbers, integers or labels.
using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// "%.9g"; non-finite values print as nan, inf, -inf.
std::string format_number(double x);

void write_csv(std::ostream& os, const Table& table);
void write_json(std::ostream& os, const Table& table);

/// Gnuplot script plotting the table stored at data_path.
std::string gnuplot_script(Command command, const Table& table, const std::string& data_path);

/// The Table 1 beta values.
const std::vector<double>& table1_betas();

Table cmd_eigen(const RunConfig& config);
Table cmd_contour(const RunConfig& config);
Table cmd_boundary(const RunConfig& config);
Table cmd_growthmap(const RunConfig& config);

struct VerifyReport {
  std::string suite;
  int passed = 0;
  int failed = 0;
  std::vector<std::string> names;
  /// One JSON object per check, serialized with sorted keys.
  std::vector<std::string> details;
};

/// Suites: profiles, specfun, closedform, slsolver, dispersion, identities,
/// index, boundary, all.
VerifyReport cmd_verify(const RunConfig& config);
std::string report_json(const VerifyReport& report);

const std::vector<std::string>& suite_names();

/// Runs a parsed configuration, writing to config.out or `fallback`.
/// Returns the process exit status; errors are reported on `err`.
int run(const RunConfig& config, std::ostream& fallback, std::ostream& err);

/// Full command-line entry point (parsing included).
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kuostab::cli
