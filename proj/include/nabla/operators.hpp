#pragma once

// Nabla calculus on finite sampled sequences. Every operator is a causal
// finite sum, so outputs are returned on the sub-grid where all inputs exist
// instead of being extrapolated.

#include <cmath>
#include <string>

#include "nabla/signal.hpp"
#include "nabla/special_fn.hpp"

namespace nabla {

/// Order n used by the Caputo difference: ceil(alpha), so integer alpha
/// gives n = alpha.
inline int caputo_order(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("order alpha must be positive and finite");
  return static_cast<int>(std::ceil(alpha));
}

/// n-th backward difference sum_{j=0}^{n} (-1)^j C(n, j) f(k - j).
/// The output starts n points later than the input; it must still cover a+1.
template <typename Scalar>
BasicSampledSignal<Scalar> backward_diff(const BasicSampledSignal<Scalar>& f, int n) {
  if (n < 0) throw DomainError("backward_diff: order must be non-negative");
  if (n == 0) return f;
  const Index a = f.origin();
  if (f.history_start() + n > a + 1) {
    const Index missing = a + 1 - n;
    throw InsufficientHistory(missing, "backward_diff: order " + std::to_string(n) + " at k=a+1 needs f(" +
                                           std::to_string(missing) + ")");
  }
  // n repeated first differences.
  typename BasicSampledSignal<Scalar>::Vector v = f.values();
  for (int pass = 0; pass < n; ++pass) {
    const Eigen::Index len = v.size() - 1;
    typename BasicSampledSignal<Scalar>::Vector d = v.tail(len) - v.head(len);
    v = std::move(d);
  }
  return BasicSampledSignal<Scalar>(a, f.history_start() + n, std::move(v));
}

/// Causal kernel sum out(k) = sum_{j=0}^{k-a-1} c_j f(k-j) on a+1..a+K.
template <typename Scalar>
BasicSampledSignal<Scalar> apply_sum_kernel(const BasicSampledSignal<Scalar>& f, const CoefficientTable& table) {
  const Index a = f.origin();
  const Index K = f.horizon();
  if (static_cast<Index>(table.size()) < K) throw DomainError("apply_sum_kernel: coefficient table too short");
  const auto x = f.horizon_values();
  typename BasicSampledSignal<Scalar>::Vector out(K);
  for (Eigen::Index i = 0; i < K; ++i) {
    Scalar acc = Scalar(0);
    for (Eigen::Index j = 0; j <= i; ++j) acc += Scalar(table.c(j)) * x(i - j);
    out(i) = acc;
  }
  return BasicSampledSignal<Scalar>::causal(a, std::move(out));
}

/// alpha-th nabla fractional sum on N_{a+1}.
template <typename Scalar>
BasicSampledSignal<Scalar> frac_sum(const BasicSampledSignal<Scalar>& f, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("frac_sum: order alpha must be positive");
  return apply_sum_kernel(f, sum_coefficients(alpha, static_cast<std::size_t>(f.horizon())));
}

/// Caputo difference: fractional sum of order n - alpha applied to the n-th
/// backward difference. Needs f back to a-n+1. For integer alpha the order-0
/// sum is the identity and the result is the plain n-th difference.
template <typename Scalar>
BasicSampledSignal<Scalar> caputo_diff(const BasicSampledSignal<Scalar>& f, double alpha) {
  const int n = caputo_order(alpha);
  const auto dn = backward_diff(f, n);
  const double remainder = static_cast<double>(n) - alpha;
  if (remainder == 0.0) {
    return BasicSampledSignal<Scalar>::causal(f.origin(), dn.horizon_values());
  }
  return apply_sum_kernel(BasicSampledSignal<Scalar>::causal(f.origin(), dn.horizon_values()),
                          sum_coefficients(remainder, static_cast<std::size_t>(f.horizon())));
}

}  // namespace nabla
