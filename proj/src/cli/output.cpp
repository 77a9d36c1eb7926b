#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "kuostab/cli.hpp"

namespace kuostab::cli {

std::string format_number(double x) {
  if (std::isnan(x)) {
    return "nan";
  }
  if (std::isinf(x)) {
    return x > 0.0 ? "inf" : "-inf";
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

namespace {

std::string cell_text(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) {
    return format_number(*d);
  }
  if (const auto* i = std::get_if<long long>(&cell)) {
    return std::to_string(*i);
  }
  return std::get<std::string>(cell);
}

nlohmann::json cell_json(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) {
    // JSON has no inf/nan; those become null
    return std::isfinite(*d) ? nlohmann::json(*d) : nlohmann::json(nullptr);
  }
  if (const auto* i = std::get_if<long long>(&cell)) {
    return *i;
  }
  return std::get<std::string>(cell);
}

int column_of(const Table& table, const std::string& name) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (table.columns[i] == name) {
      return static_cast<int>(i) + 1;
    }
  }
  return 0;
}

}  // namespace

void write_csv(std::ostream& os, const Table& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    os << (i ? "," : "") << table.columns[i];
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << (i ? "," : "") << cell_text(row[i]);
    }
    os << '\n';
  }
}

void write_json(std::ostream& os, const Table& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size() && i < table.columns.size(); ++i) {
      obj[table.columns[i]] = cell_json(row[i]);
    }
    rows.push_back(std::move(obj));
  }
  const nlohmann::json doc = {{"columns", table.columns}, {"rows", rows}};
  os << doc.dump(2) << '\n';
}

std::string gnuplot_script(Command command, const Table& table, const std::string& data_path) {
  std::ostringstream s;
  s << "set datafile separator ','\n";
  s << "set key autotitle columnhead\n";
  s << "data = '" << data_path << "'\n";
  switch (command) {
    case Command::eigen:
      s << "set xlabel 'n'\nset ylabel 'lambda_n'\n";
      s << "plot data using " << column_of(table, "n") << ':' << column_of(table, "lambda")
        << " with linespoints\n";
      break;
    case Command::contour:
      s << "set xlabel 'ctilde'\nset ylabel 'beta'\n";
      s << "set view map\nset contour base\nset cntrparam levels 20\nset dgrid3d\n";
      s << "splot data using " << column_of(table, "ctilde") << ':' << column_of(table, "beta") << ":(-$"
        << column_of(table, "lambda1") << ") with pm3d title '-lambda_1'\n";
      break;
    case Command::boundary:
      s << "set xlabel 'beta'\nset ylabel 'alpha'\n";
      s << "plot data using " << column_of(table, "beta") << ':' << column_of(table, "sqrt_lambda")
        << " with linespoints, \\\n     data using " << column_of(table, "beta") << ':'
        << column_of(table, "snm_alpha") << " with lines\n";
      break;
    case Command::growthmap:
      s << "set xlabel 'beta'\nset ylabel 'alpha'\nset cblabel 'Im c'\n";
      s << "plot data using " << column_of(table, "beta") << ':' << column_of(table, "alpha") << ":(strcol("
        << column_of(table, "found") << ") eq '1' ? $" << column_of(table, "c_im")
        << " : 0) with points pt 5 palette notitle\n";
      break;
    case Command::verify:
      break;
  }
  return s.str();
}

}  // namespace kuostab::cli
