#include "nabla/solver.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

namespace nabla {

namespace {

bool is_integer_order(double alpha) { return alpha == std::floor(alpha); }

}  // namespace

Eigen::VectorXd initial_history(const SystemSpec& spec) {
  spec.validate();
  const int n = spec.order();
  // Unknowns z_j = y(a - j). Row kappa: sum_{j<=kappa} (-1)^j C(kappa, j) z_j = b_kappa.
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (int kappa = 0; kappa < n; ++kappa) {
    double binom = 1.0;
    for (int j = 0; j <= kappa; ++j) {
      L(kappa, j) = (j % 2 == 0 ? 1.0 : -1.0) * binom;
      binom = binom * (kappa - j) / (j + 1);
    }
  }
  const Eigen::VectorXd z = L.triangularView<Eigen::Lower>().solve(spec.b);
  return z.reverse();
}

Response solve_explicit(const SystemSpec& spec, const InputSignal& u, Index K, double tol) {
  spec.validate();
  if (K < 1) throw DomainError("solve_explicit: horizon must be at least 1");
  u.check_horizon(K);
  if (std::abs(spec.lambda) >= 1.0 && !is_integer_order(spec.alpha)) {
    throw SeriesNotConvergent("solve_explicit: |lambda| >= 1 with non-integer alpha has no convergent series; "
                              "use solve_recursive");
  }
  const int n = spec.order();

  Response r;
  r.a = spec.a;
  r.method = SolveMethod::Explicit;
  r.y = Eigen::VectorXd::Zero(K);

  auto track = [&r](const MLResult& v) { r.max_series_truncation = std::max(r.max_series_truncation, v.truncation_bound); };

  for (int kappa = 0; kappa < n; ++kappa) {
    if (spec.b(kappa) == 0.0) continue;
    const auto F = ml_sample(spec.alpha, kappa + 1.0, spec.lambda, spec.a, K, tol);
    for (Index m = 1; m <= K; ++m) {
      r.y(m - 1) += spec.b(kappa) * F[static_cast<std::size_t>(m)].value;
      track(F[static_cast<std::size_t>(m)]);
    }
  }

  if (!u.is_zero()) {
    const auto G = ml_sample(spec.alpha, spec.alpha, spec.lambda, spec.a, K, tol);
    for (Index m = 1; m <= K; ++m) {
      double acc = 0.0;
      for (Index tau = 1; tau <= m; ++tau) acc += G[static_cast<std::size_t>(tau)].value * u.at(m - tau + 1);
      r.y(m - 1) += acc;
      track(G[static_cast<std::size_t>(m)]);
    }
  }
  return r;
}

double residual(const SystemSpec& spec, const InputSignal& u, const Response& r) {
  spec.validate();
  const Index K = r.horizon();
  if (K < 1) throw DomainError("residual: horizon too short (need at least n+1 points)");
  u.check_horizon(K);
  if (r.a != spec.a) throw DomainError("residual: response and system have different origins");

  const auto y = SampledSignal::with_history(spec.a, initial_history(spec), r.y);
  const auto c = caputo_diff(y, spec.alpha);
  double worst = 0.0;
  for (Index m = 1; m <= K; ++m) {
    const Index k = spec.a + m;
    worst = std::max(worst, std::abs(c(k) - spec.lambda * y(k) - u.at(m)));
  }
  return worst;
}

double residual_amplification(double alpha, double lambda, Index K) {
  caputo_order(alpha);
  if (lambda == 1.0) throw DomainError("lambda must not equal 1");
  if (K < 1) throw DomainError("residual_amplification: horizon must be at least 1");
  const auto table = sum_coefficients(alpha, static_cast<std::size_t>(K));
  const double gain = 1.0 / std::abs(1.0 - lambda);
  const double mu = std::abs(lambda);
  Eigen::VectorXd E(K);
  double source = 0.0;
  double worst = 0.0;
  for (Index m = 1; m <= K; ++m) {
    source += table.c(m - 1);
    double memory = 0.0;
    for (Index j = 1; j < m; ++j) memory += table.c(j) * E(m - j - 1);
    E(m - 1) = (mu * memory + source) * gain;
    worst = std::max(worst, E(m - 1));
  }
  return worst;
}

}  // namespace nabla
