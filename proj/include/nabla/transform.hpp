#pragma once

// Truncated nabla discrete Laplace (N-) transform
//
//   F(s) = sum_{k>=1} (1 - s)^{k-1} f(a + k)
//
// and the identities built on it: initial value, final value, the backward
// difference rule, and the closed-form transform of a zero-input response.

#include <complex>
#include <string>

#include <Eigen/Core>

#include "nabla/operators.hpp"
#include "nabla/signal.hpp"
#include "nabla/special_fn.hpp"

namespace nabla {

/// sum_{k=1}^{K} (1 - s)^{k-1} f(a + k), by Horner's rule in w = 1 - s.
/// At s = 1 the result is f(a+1) bit for bit.
template <typename Scalar>
std::complex<Scalar> n_transform_partial(const BasicSampledSignal<Scalar>& f, std::complex<Scalar> s, Index K) {
  if (K < 1 || K > f.horizon()) throw DomainError("n_transform_partial: K must lie in [1, horizon]");
  const std::complex<Scalar> w = Scalar(1) - s;
  const Index a = f.origin();
  std::complex<Scalar> acc = f(a + K);
  for (Index k = K - 1; k >= 1; --k) acc = acc * w + f(a + k);
  return acc;
}

template <typename Scalar>
std::complex<Scalar> n_transform_partial(const BasicSampledSignal<Scalar>& f, std::complex<Scalar> s) {
  return n_transform_partial(f, s, f.horizon());
}

/// f(a + kappa) recovered from the transform: subtract the first kappa-1
/// terms, divide by (1-s)^{kappa-1} and let s -> 1. On a truncated series the
/// subtraction and division are exact coefficient shifts, so the limit is the
/// shifted transform evaluated at s = 1.
template <typename Scalar>
Scalar initial_value(const BasicSampledSignal<Scalar>& f, Index kappa) {
  if (kappa < 1 || kappa > f.horizon()) {
    throw DomainError("initial_value: kappa=" + std::to_string(kappa) + " outside [1, horizon]");
  }
  const Index a = f.origin();
  typename BasicSampledSignal<Scalar>::Vector tail(f.horizon() - kappa + 1);
  for (Index k = kappa; k <= f.horizon(); ++k) tail(static_cast<Eigen::Index>(k - kappa)) = f(a + k);
  const auto shifted = BasicSampledSignal<Scalar>::causal(a, std::move(tail));
  return n_transform_partial(shifted, std::complex<Scalar>(1)).real();
}

template <typename Scalar>
struct FinalValueEstimate {
  Scalar value;
  /// False when K * s_probe < 10: the geometric weight has not decayed
  /// enough over the horizon for the estimate to mean anything.
  bool tail_resolved;
};

/// s_probe * F(s_probe) over the full horizon.
template <typename Scalar>
FinalValueEstimate<Scalar> final_value_estimate(const BasicSampledSignal<Scalar>& f, Scalar s_probe) {
  if (!(s_probe > Scalar(0) && s_probe < Scalar(1))) throw DomainError("final_value_estimate: need 0 < s_probe < 1");
  const auto F = n_transform_partial(f, std::complex<Scalar>(s_probe));
  return {s_probe * F.real(), static_cast<Scalar>(f.horizon()) * s_probe >= Scalar(10)};
}

/// N{grad^n f} - [s^n F(s) - sum_{j<n} s^{n-j-1} grad^j f(a)] at matched
/// truncation. For n = 1 the exact value is (1-s)^K f(a+K); in general it is
/// a tail of order |1-s|^K.
template <typename Scalar>
std::complex<Scalar> diff_rule_residual(const BasicSampledSignal<Scalar>& f, std::complex<Scalar> s, int n) {
  if (n < 1) throw DomainError("diff_rule_residual: n must be positive");
  const Index a = f.origin();
  const Index K = f.horizon();
  const auto dn = backward_diff(f, n);
  const auto lhs = n_transform_partial(BasicSampledSignal<Scalar>::causal(a, dn.horizon_values()), s, K);
  const auto F = n_transform_partial(f, s, K);
  std::complex<Scalar> rhs = std::pow(s, n) * F;
  for (int j = 0; j < n; ++j) rhs -= std::pow(s, n - j - 1) * backward_diff(f, j)(a);
  return lhs - rhs;
}

/// Y(s) = sum_kappa b_kappa s^{alpha-kappa-1} / (s^alpha - lambda), the
/// transform of the zero-input response.
struct ResponseTransform {
  double alpha = 1.0;
  double lambda = 0.0;
  Eigen::VectorXd b;  // b_0..b_{n-1}, n = ceil(alpha)
};

std::complex<double> response_transform_eval(const ResponseTransform& rt, std::complex<double> s);

}  // namespace nabla
