#pragma once

// Discrete Mittag-Leffler function
//
//   F_{alpha,beta}(lambda, k, a) = sum_{j>=0} lambda^j (k-a)^{(j alpha + beta - 1)} / Gamma(j alpha + beta)
//
// with p^{(q)} = Gamma(p+q)/Gamma(p). For fixed k the series converges iff
// |lambda| < 1. For lambda < 0 it is alternating and its terms can exceed the
// sum by many orders of magnitude, so the evaluator estimates the condition
// number in log space first and then sums in double or in a binary floating
// type wide enough to absorb the cancellation.

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "nabla/signal.hpp"

namespace nabla {

inline constexpr double kDefaultMlTol = 1e-12;
inline constexpr std::size_t kMaxSeriesTerms = 100000;

/// |lambda| >= 1 and no closed form applies. Use the recursive solver.
class SeriesNotConvergent : public std::runtime_error {
 public:
  explicit SeriesNotConvergent(const std::string& what) : std::runtime_error(what) {}
};

/// Term cap hit, or the cancellation exceeds the widest precision tier.
class NonConvergedAtCap : public std::runtime_error {
 public:
  explicit NonConvergedAtCap(const std::string& what) : std::runtime_error(what) {}
};

struct MLQuery {
  double alpha = 1.0;
  double beta = 1.0;
  double lambda = 0.0;
  Index a = 0;
  Index k = 0;
};

enum class MLPath {
  Finite,         ///< k - a <= 1: zero, one, or geometric closed form
  Series,         ///< truncated series
  IntegerClosed,  ///< integer alpha, integer 1 <= beta <= alpha: partial fractions
};

struct MLResult {
  double value = 0.0;
  std::size_t terms_used = 0;
  /// Magnitude of the first neglected term (0 for exact paths).
  double truncation_bound = 0.0;
  MLPath path = MLPath::Finite;
  /// Decimal digits of the arithmetic the series was summed in (15 = double).
  int working_digits = 15;
};

/// Evaluates one value. Series path when |lambda| < 1; closed forms when
/// k - a <= 1 or (integer alpha, integer beta in [1, alpha]).
MLResult ml_eval(const MLQuery& q, double tol = kDefaultMlTol);

/// F_{alpha,beta}(lambda, a+m, a) for m = 0..K, sharing work across m.
/// Entry m of the result is the value at k = a+m.
std::vector<MLResult> ml_sample(double alpha, double beta, double lambda, Index a, Index K,
                                double tol = kDefaultMlTol);

/// Convenience: ml_sample values as a signal on a..a+K (one history point at a).
SampledSignal ml_signal(double alpha, double beta, double lambda, Index a, Index K, double tol = kDefaultMlTol);

/// F_{1,1}(lambda, k, a) = (1 - lambda)^{-(k-a)}.
double ml_alpha1_closed(double lambda, Index k, Index a);

/// F_{n,beta}(lambda, k, a) for integer n >= 1 and integer 1 <= beta <= n:
/// (1/n) sum_i r_i^{1-beta} (1 - r_i)^{-(k-a)} over the n roots r_i of s^n = lambda.
/// Valid for every lambda != 0, 1.
double ml_integer_order_closed(int n, int beta, double lambda, Index k, Index a);

/// F_{alpha,2}(lambda, .) at k = a, a+1, a+2.
struct MLBoundaryValues {
  double at_a;
  double at_a1;
  double at_a2;
};

MLBoundaryValues ml_boundary_values(double alpha, double lambda);

/// N-transform of F_{alpha,beta}: s^{alpha-beta} / (s^alpha - lambda), principal branch,
/// valid for |lambda| < |s|^alpha.
std::complex<double> ml_transform_point(double alpha, double beta, double lambda, std::complex<double> s);

}  // namespace nabla
