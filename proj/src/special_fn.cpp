#include "nabla/special_fn.hpp"

#include <cmath>
#include <limits>

namespace nabla {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// glibc's lgamma writes the global signgam; lgamma_r does not.
double lgamma_reentrant(double x, int* sign) {
#if defined(__GLIBC__)
  return ::lgamma_r(x, sign);
#else
  const double r = std::lgamma(x);
  *sign = (x > 0.0 || static_cast<long long>(std::floor(x)) % 2 == 0) ? 1 : -1;
  return r;
#endif
}

}  // namespace

bool is_gamma_pole(double x) { return x <= 0.0 && x == std::floor(x); }

SignedLogGamma log_gamma_signed(double x) {
  if (!std::isfinite(x)) throw DomainError("log_gamma_signed: argument must be finite");
  if (is_gamma_pole(x)) return {kNegInf, 0};
  int sign = 1;
  const double lg = lgamma_reentrant(x, &sign);
  return {lg, sign};
}

double reciprocal_gamma(double x) {
  const auto g = log_gamma_signed(x);
  if (g.is_pole()) return 0.0;
  return g.sign * std::exp(-g.log_magnitude);
}

double rising_factorial(long long m, double q) {
  if (m < 0) throw DomainError("rising_factorial: m must be non-negative");
  if (q == 0.0) return 1.0;
  const double top = static_cast<double>(m) + q;
  const auto num = log_gamma_signed(top);
  if (num.is_pole()) {
    throw DomainError("rising_factorial: Gamma(m + q) has a pole at m + q = " + std::to_string(top));
  }
  if (m == 0) return 0.0;
  const auto den = log_gamma_signed(static_cast<double>(m));
  return num.sign * std::exp(num.log_magnitude - den.log_magnitude);
}

double binom_general(double p, long long q) {
  if (q < 0) throw DomainError("binom_general: q must be a non-negative integer");
  if (!std::isfinite(p)) throw DomainError("binom_general: p must be finite");
  if (q == 0) return 1.0;

  // Short products are exact for integer p and more accurate than lgamma.
  if (q <= 64) {
    double r = 1.0;
    for (long long i = 1; i <= q; ++i) r *= (p - static_cast<double>(i) + 1.0) / static_cast<double>(i);
    return r;
  }

  const double qd = static_cast<double>(q);
  if (p < 0.0) {
    const double lg = std::lgamma(qd - p) - std::lgamma(qd + 1.0) - std::lgamma(-p);
    return (q % 2 == 0 ? 1.0 : -1.0) * std::exp(lg);
  }
  const auto den = log_gamma_signed(p - qd + 1.0);
  if (den.is_pole()) return 0.0;
  const double lg = std::lgamma(p + 1.0) - std::lgamma(qd + 1.0) - den.log_magnitude;
  return den.sign * std::exp(lg);
}

CoefficientTable sum_coefficients(double alpha, std::size_t J) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw DomainError("sum_coefficients: alpha must be a finite non-negative order");
  }
  CoefficientTable table;
  table.alpha = alpha;
  table.c.resize(static_cast<Eigen::Index>(J) + 1);
  table.c(0) = 1.0;
  for (Eigen::Index j = 1; j <= static_cast<Eigen::Index>(J); ++j) {
    table.c(j) = table.c(j - 1) * (static_cast<double>(j) - 1.0 + alpha) / static_cast<double>(j);
  }
  return table;
}

}  // namespace nabla
