#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "nabla/classifier.hpp"
#include "nabla/mittag_leffler.hpp"
#include "nabla/scenario.hpp"
#include "nabla/solver.hpp"

using namespace nabla;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;

const char* to_string(MLPath p) {
  switch (p) {
    case MLPath::Finite: return "finite";
    case MLPath::Series: return "series";
    case MLPath::IntegerClosed: return "integer-closed";
  }
  return "?";
}

Eigen::VectorXd initial_conditions(double alpha, double b0, double b1) {
  const int n = caputo_order(alpha);
  if (n == 1 && b1 != 0.0) throw DomainError("--b1 needs alpha > 1");
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b(0) = b0;
  if (n > 1) b(1) = b1;
  return b;
}

struct RunArgs {
  std::string scenario;
  std::string out;
  Index horizon = 0;
  std::string method;
  unsigned workers = 0;
};

struct MlArgs {
  double alpha = 1.0, beta = 1.0, lambda = 0.0, tol = kDefaultMlTol;
  Index a = 0, k = 0;
};

struct ClassifyArgs {
  double alpha = 1.0, lambda = 0.0, b0 = 1.0, b1 = 0.0, boundary_tol = kAnalyticBoundaryTol;
};

struct SolveArgs {
  double alpha = 1.0, lambda = 0.0, b0 = 1.0, b1 = 0.0;
  Index a = 1, horizon = 100;
  std::string input, method = "auto", out;
};

int cmd_run(const RunArgs& r) {
  Scenario sc = load_scenario(r.scenario);
  if (r.horizon > 0) sc.horizon = r.horizon;
  if (!r.method.empty()) sc.method = parse_method(r.method);
  const auto out = run_scenario(sc, r.out, r.workers);
  std::cout << out.summary << "wrote " << out.csv_path.string() << "\nwrote " << out.svg_path.string() << "\n";
  return 0;
}

int cmd_ml(const MlArgs& m) {
  const auto res = ml_eval(MLQuery{m.alpha, m.beta, m.lambda, m.a, m.k}, m.tol);
  std::cout << "value: " << format_g17(res.value) << "\n"
            << "path: " << to_string(res.path) << "\n"
            << "terms_used: " << res.terms_used << "\n"
            << "truncation_bound: " << format_g17(res.truncation_bound) << "\n"
            << "working_digits: " << res.working_digits << "\n";
  return 0;
}

int cmd_classify(const ClassifyArgs& c) {
  const auto b = initial_conditions(c.alpha, c.b0, c.b1);
  const auto bc = classify_zero_input(c.alpha, c.lambda, b, c.boundary_tol);
  std::cout << "verdict: " << to_string(bc.verdict) << "\n"
            << "pole: " << format_g17(bc.pole.real()) << (bc.pole.imag() < 0 ? " - " : " + ")
            << format_g17(std::abs(bc.pole.imag())) << "i\n"
            << "pole_region: " << to_string(bc.pole_region) << "\n"
            << "converges: " << (predicts_convergence(bc.verdict) ? "yes" : "no") << "\n";
  if (c.alpha > 2.0) std::cout << "critical_radius: " << format_g17(critical_radius(c.alpha)) << "\n";
  return 0;
}

int cmd_solve(const SolveArgs& s) {
  SystemSpec spec{s.alpha, s.lambda, s.a, initial_conditions(s.alpha, s.b0, s.b1)};
  spec.validate();
  InputSignal u = InputSignal::zero();
  if (!s.input.empty()) {
    std::ifstream in(s.input);
    if (!in) throw DomainError("cannot open input file '" + s.input + "'");
    u = InputSignal::table(read_input_table(in));
    u.check_horizon(s.horizon);
  }
  const auto method = resolve_method(parse_method(s.method), s.alpha, s.lambda);
  const Response r =
      method == SolveMethod::Explicit ? solve_explicit(spec, u, s.horizon) : solve_recursive(spec, u, s.horizon);
  std::ofstream out(s.out, std::ios::binary);
  if (!out) throw DomainError("cannot write '" + s.out + "'");
  out << kCsvHeader << '\n';
  write_csv_rows(out, s.alpha, r);
  if (!out) throw DomainError("write failed for '" + s.out + "'");
  std::cout << "method: " << (method == SolveMethod::Explicit ? "explicit" : "recursive") << "\n"
            << "residual: " << format_g17(residual(spec, u, r)) << "\n"
            << "wrote " << s.out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nabla fractional difference systems: Mittag-Leffler values, solving, classification"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run a built-in case (case1..case4) or a scenario file");
  run_cmd->add_option("scenario", run.scenario, "case1|case2|case3|case4|file.scn")->required();
  run_cmd->add_option("--out", run.out, "Output directory")->required();
  run_cmd->add_option("--horizon", run.horizon, "Override the horizon K")->check(CLI::PositiveNumber);
  run_cmd->add_option("--method", run.method, "auto|explicit|recursive");
  run_cmd->add_option("--workers", run.workers, "Worker threads (0 = hardware count)");

  MlArgs ml;
  auto* ml_cmd = app.add_subcommand("ml", "Evaluate F_{alpha,beta}(lambda, k, a)");
  ml_cmd->add_option("--alpha", ml.alpha)->required();
  ml_cmd->add_option("--beta", ml.beta)->required();
  ml_cmd->add_option("--lambda", ml.lambda)->required();
  ml_cmd->add_option("--k", ml.k)->required();
  ml_cmd->add_option("--a", ml.a, "Origin")->capture_default_str();
  ml_cmd->add_option("--tol", ml.tol, "Series tolerance")->capture_default_str();

  ClassifyArgs cl;
  auto* cl_cmd = app.add_subcommand("classify", "Classify the zero-input response");
  cl_cmd->add_option("--alpha", cl.alpha)->required();
  cl_cmd->add_option("--lambda", cl.lambda)->required();
  cl_cmd->add_option("--b0", cl.b0)->capture_default_str();
  cl_cmd->add_option("--b1", cl.b1)->capture_default_str();
  cl_cmd->add_option("--boundary-tol", cl.boundary_tol)->capture_default_str();

  SolveArgs so;
  auto* so_cmd = app.add_subcommand("solve", "Solve one system and write its response as CSV");
  so_cmd->add_option("--alpha", so.alpha)->required();
  so_cmd->add_option("--lambda", so.lambda)->required();
  so_cmd->add_option("--b0", so.b0)->capture_default_str();
  so_cmd->add_option("--b1", so.b1)->capture_default_str();
  so_cmd->add_option("--a", so.a)->capture_default_str();
  so_cmd->add_option("--horizon", so.horizon)->capture_default_str()->check(CLI::PositiveNumber);
  so_cmd->add_option("--input", so.input, "CSV with u(a+1..a+K)");
  so_cmd->add_option("--method", so.method, "auto|explicit|recursive")->capture_default_str();
  so_cmd->add_option("--out", so.out, "Output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*run_cmd) return cmd_run(run);
    if (*ml_cmd) return cmd_ml(ml);
    if (*cl_cmd) return cmd_classify(cl);
    if (*so_cmd) return cmd_solve(so);
  } catch (const SeriesNotConvergent& e) {
    std::cerr << "error: " << e.what() << "\nhint: the series needs |lambda| < 1; use `nabla-fde solve` instead\n";
    return kExitInput;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const NonConvergedAtCap& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const NumericOverflow& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
