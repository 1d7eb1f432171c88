// Overshoot of the zero-input response over a grid of alpha in (1, 2) and
// b1/b0 ratios (b0 = 1). Prints a CSV table, then for each ratio the smallest
// alpha on the grid whose response crosses zero.

#include <cstdio>
#include <vector>

#include "CLI11.hpp"
#include "nabla/classifier.hpp"
#include "nabla/solver.hpp"

using namespace nabla;

int main(int argc, char** argv) {
  CLI::App app{"Overshoot scan over alpha and b1/b0"};
  double lambda = -0.2, alpha_lo = 1.05, alpha_hi = 1.95, alpha_step = 0.05, threshold = 1e-9;
  double ratio_lo = 1.0, ratio_hi = 9.0, ratio_step = 1.0;
  Index horizon = 1000;
  app.add_option("--lambda", lambda)->capture_default_str();
  app.add_option("--alpha-min", alpha_lo)->capture_default_str();
  app.add_option("--alpha-max", alpha_hi)->capture_default_str();
  app.add_option("--alpha-step", alpha_step)->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--ratio-min", ratio_lo)->capture_default_str();
  app.add_option("--ratio-max", ratio_hi)->capture_default_str();
  app.add_option("--ratio-step", ratio_step)->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--horizon", horizon)->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--threshold", threshold, "Overshoot counted when above this")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  std::vector<double> alphas, ratios;
  for (int i = 0; alpha_lo + i * alpha_step <= alpha_hi + 1e-12; ++i) alphas.push_back(alpha_lo + i * alpha_step);
  for (int i = 0; ratio_lo + i * ratio_step <= ratio_hi + 1e-12; ++i) ratios.push_back(ratio_lo + i * ratio_step);

  std::vector<double> onset(ratios.size(), -1.0);
  std::printf("alpha");
  for (double r : ratios) std::printf(",b1/b0=%g", r);
  std::printf("\n");
  try {
    for (double alpha : alphas) {
      std::printf("%.4g", alpha);
      for (std::size_t j = 0; j < ratios.size(); ++j) {
        const SystemSpec s{alpha, lambda, 1, Eigen::Vector2d(1.0, ratios[j])};
        const auto r = solve_recursive<long double>(s, InputSignal::zero(), horizon);
        const double os = static_cast<double>(overshoot_magnitude<long double>(r.y));
        if (os > threshold && onset[j] < 0.0) onset[j] = alpha;
        std::printf(",%.6g", os);
      }
      std::printf("\n");
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  std::printf("\n# smallest alpha with overshoot > %g (lambda=%g, K=%ld)\n", threshold, lambda,
              static_cast<long>(horizon));
  for (std::size_t j = 0; j < ratios.size(); ++j) {
    if (onset[j] < 0.0) {
      std::printf("# b1/b0=%g: none on the grid\n", ratios[j]);
    } else {
      std::printf("# b1/b0=%g: %.4g\n", ratios[j], onset[j]);
    }
  }
  return 0;
}
