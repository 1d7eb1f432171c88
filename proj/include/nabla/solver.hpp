#pragma once

// Solving the scalar system
//
//   Caputo difference of order alpha of y  =  lambda y(k) + u(k),   lambda != 1,
//   grad^kappa y(a) = b_kappa,  kappa = 0..n-1,  n = ceil(alpha).
//
// Two routes: the Mittag-Leffler expansion (series, |lambda| < 1, or integer
// alpha closed forms) and the exact step-by-step recursion of the equivalent
// sum equation, which holds for every lambda != 1 and is the reference.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Core>

#include "nabla/mittag_leffler.hpp"
#include "nabla/operators.hpp"
#include "nabla/signal.hpp"
#include "nabla/special_fn.hpp"

namespace nabla {

class NumericOverflow : public std::overflow_error {
 public:
  NumericOverflow(Index step, const std::string& what) : std::overflow_error(what), step_(step) {}
  Index step() const { return step_; }

 private:
  Index step_;
};

struct SystemSpec {
  double alpha = 1.0;
  double lambda = 0.0;
  Index a = 0;
  Eigen::VectorXd b;  // b_0..b_{n-1}

  int order() const { return caputo_order(alpha); }

  void validate() const {
    const int n = order();
    if (!std::isfinite(lambda)) throw DomainError("SystemSpec: lambda must be finite");
    if (lambda == 1.0) throw DomainError("lambda must not equal 1");
    if (b.size() != n) {
      throw DomainError("SystemSpec: expected " + std::to_string(n) + " initial conditions for alpha=" +
                        std::to_string(alpha) + ", got " + std::to_string(b.size()));
    }
  }
};

/// u(k) on a+1..a+K, or identically zero.
class InputSignal {
 public:
  static InputSignal zero() { return InputSignal(); }
  static InputSignal table(Eigen::VectorXd values) { return InputSignal(std::move(values)); }

  bool is_zero() const { return !values_.has_value(); }

  /// u(a+m), m = 1..K.
  double at(Index m) const { return values_ ? (*values_)(static_cast<Eigen::Index>(m - 1)) : 0.0; }

  void check_horizon(Index K) const {
    if (values_ && values_->size() != K) {
      throw DomainError("InputSignal: table has " + std::to_string(values_->size()) + " samples, horizon is " +
                        std::to_string(K));
    }
  }

 private:
  InputSignal() = default;
  explicit InputSignal(Eigen::VectorXd values) : values_(std::move(values)) {}
  std::optional<Eigen::VectorXd> values_;
};

enum class SolveMethod { Explicit, Recursive };

template <typename Scalar>
struct BasicResponse {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Index a = 0;
  Vector y;  // y(a+1..a+K)
  SolveMethod method = SolveMethod::Recursive;
  double max_series_truncation = 0.0;  // explicit route only

  Index horizon() const { return static_cast<Index>(y.size()); }
  Scalar at(Index k) const { return y(static_cast<Eigen::Index>(k - a - 1)); }
  BasicSampledSignal<Scalar> signal() const { return BasicSampledSignal<Scalar>::causal(a, y); }
};

using Response = BasicResponse<double>;

/// Pre-origin samples y(a-n+1..a) (chronological) that realize
/// grad^kappa y(a) = b_kappa. The system is lower triangular with +-1 on the diagonal.
Eigen::VectorXd initial_history(const SystemSpec& spec);

/// y_0(a+m) = sum_kappa b_kappa m^{(kappa)} / kappa!, the polynomial carried
/// by the initial conditions.
template <typename Scalar>
Scalar initial_condition_polynomial(const Eigen::VectorXd& b, Index m) {
  Scalar acc(0);
  Scalar rising(1);  // m^{(kappa)} / kappa!
  for (Eigen::Index kappa = 0; kappa < b.size(); ++kappa) {
    if (kappa > 0) rising = rising * Scalar(m + kappa - 1) / Scalar(kappa);
    acc += Scalar(b(kappa)) * rising;
  }
  return acc;
}

/// Marches the sum equation
///   (1 - lambda) y(k) = y_0(k) + lambda sum_{j=1}^{k-a-1} c_j y(k-j) + (sum_{j} c_j u(k-j)),
/// with c_j the fractional-sum kernel. Exact up to rounding in Scalar.
/// Throws NumericOverflow when a sample leaves the range of Scalar.
template <typename Scalar = double>
BasicResponse<Scalar> solve_recursive(const SystemSpec& spec, const InputSignal& u, Index K) {
  spec.validate();
  if (K < 1) throw DomainError("solve_recursive: horizon must be at least 1");
  u.check_horizon(K);

  const auto table = sum_coefficients(spec.alpha, static_cast<std::size_t>(K));
  const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> c = table.c.template cast<Scalar>();
  const Scalar lambda(spec.lambda);
  const Scalar gain = Scalar(1) / (Scalar(1) - lambda);

  BasicResponse<Scalar> r;
  r.a = spec.a;
  r.method = SolveMethod::Recursive;
  r.y.resize(K);
  for (Index m = 1; m <= K; ++m) {
    Scalar memory(0);
    for (Index j = 1; j < m; ++j) memory += c(j) * r.y(m - j - 1);
    Scalar forcing(0);
    if (!u.is_zero()) {
      for (Index j = 0; j < m; ++j) forcing += c(j) * Scalar(u.at(m - j));
    }
    const Scalar ym = (initial_condition_polynomial<Scalar>(spec.b, m) + lambda * memory + forcing) * gain;
    using std::isfinite;
    if (!isfinite(ym)) {
      throw NumericOverflow(spec.a + m, "solve_recursive: response overflows at k=" + std::to_string(spec.a + m));
    }
    r.y(m - 1) = ym;
  }
  return r;
}

/// y(k) = sum_kappa b_kappa F_{alpha,kappa+1}(lambda,k,a) + sum_{tau=a+1}^{k} F_{alpha,alpha}(lambda,tau,a) u(k-tau+a+1).
/// Needs |lambda| < 1 or integer alpha; otherwise SeriesNotConvergent.
Response solve_explicit(const SystemSpec& spec, const InputSignal& u, Index K, double tol = kDefaultMlTol);

/// max_k |Caputo(y)(k) - lambda y(k) - u(k)| with the history rebuilt from b.
double residual(const SystemSpec& spec, const InputSignal& u, const Response& r);

/// C(K) such that two candidates with Caputo residuals eps1, eps2 (same
/// initial conditions) differ by at most (eps1 + eps2) C(K) on a+1..a+K.
/// Majorant of the error recursion with |c_j| and |lambda|.
double residual_amplification(double alpha, double lambda, Index K);

}  // namespace nabla
