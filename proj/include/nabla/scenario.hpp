#pragma once

// Parameter sweeps over alpha or lambda for the zero-input response, with CSV
// and SVG output. Four built-in cases; other sweeps come from a key = value
// text file:
//
//   # comment
//   name    = my_sweep
//   alpha   = 1.1:0.1:2.0      (start:step:end, inclusive)
//   lambda  = -0.2             (or a comma list: -0.1, -0.2, -0.3)
//   b0      = 1
//   b1      = 0
//   a       = 1
//   horizon = 100
//   method  = auto             (auto | explicit | recursive)
//
// Exactly one of alpha / lambda must hold more than one value.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "nabla/classifier.hpp"
#include "nabla/solver.hpp"

namespace nabla {

enum class MethodChoice { Auto, Explicit, Recursive };

MethodChoice parse_method(const std::string& s);
const char* to_string(MethodChoice m);

/// auto: recursive when |lambda| >= 0.95 or alpha is within 1e-12 of an integer.
SolveMethod resolve_method(MethodChoice m, double alpha, double lambda);

Response solve_zero_input(const SystemSpec& spec, MethodChoice m, Index K);

struct Scenario {
  std::string name;
  std::vector<double> alpha_grid;
  std::vector<double> lambda_grid;
  double b0 = 1.0;
  double b1 = 0.0;
  Index a = 1;
  Index horizon = 100;
  MethodChoice method = MethodChoice::Auto;

  void validate() const;
  bool sweeps_alpha() const { return alpha_grid.size() > 1; }
  std::size_t size() const { return sweeps_alpha() ? alpha_grid.size() : lambda_grid.size(); }
  const char* sweep_name() const { return sweeps_alpha() ? "alpha" : "lambda"; }
  double sweep_value(std::size_t i) const { return sweeps_alpha() ? alpha_grid[i] : lambda_grid[i]; }
  /// System of sweep point i; b is (b0, b1) cut or zero-padded to ceil(alpha).
  SystemSpec system(std::size_t i) const;
};

bool is_builtin_scenario(const std::string& name);
Scenario builtin_scenario(const std::string& name);

/// Throws DomainError on unknown keys, malformed values or a bad sweep.
Scenario parse_scenario(std::istream& in, const std::string& default_name);
Scenario load_scenario(const std::string& case_or_path);

struct SweepPoint {
  double param = 0.0;
  Response response;
  BehaviorClass analytic;
  EmpiricalVerdict empirical;
  double overshoot = 0.0;
};

struct RunOutput {
  std::filesystem::path csv_path;
  std::filesystem::path svg_path;
  std::vector<SweepPoint> points;
  std::string summary;
};

inline constexpr Index kEmpiricalHorizon = 2000;

/// Solves every sweep point (in parallel when workers != 1; 0 picks the
/// hardware count), then writes <name>.csv, <name>.svg and <name>_summary.txt.
RunOutput run_scenario(const Scenario& sc, const std::filesystem::path& out_dir, unsigned workers = 0);

/// 17 significant digits, enough to read back the same double.
std::string format_g17(double v);

/// Long-format rows "sweep_param,k,y" (no header).
void write_csv_rows(std::ostream& out, double sweep_param, const Response& r);
inline constexpr const char* kCsvHeader = "sweep_param,k,y";

struct CsvRow {
  double sweep_param = 0.0;
  Index k = 0;
  double y = 0.0;
};

/// Reads what write_csv_rows produced, header line included.
std::vector<CsvRow> read_csv(std::istream& in);

/// Input samples u(a+1..a+K) for solve: one value per line, or "k,u" pairs
/// (the last column is taken). A non-numeric first line is a header.
Eigen::VectorXd read_input_table(std::istream& in);

}  // namespace nabla
