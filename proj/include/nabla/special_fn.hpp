#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace nabla {

class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// log|Gamma(x)| together with the sign of Gamma(x).
/// At the poles (x = 0, -1, -2, ...) sign is 0 and log_magnitude is -infinity,
/// which is the log of |1/Gamma| rather than of |Gamma|: callers that divide by
/// Gamma get the 1/Gamma(pole) = 0 convention for free.
struct SignedLogGamma {
  double log_magnitude;
  int sign;

  bool is_pole() const { return sign == 0; }
};

/// True when x is 0, -1, -2, ...
bool is_gamma_pole(double x);

SignedLogGamma log_gamma_signed(double x);

/// 1/Gamma(x), exactly 0 at the poles of Gamma.
double reciprocal_gamma(double x);

/// Rising factorial m^{(q)} = Gamma(m + q) / Gamma(m), evaluated in log space.
/// q == 0 gives 1 for every m (including m = 0). For m = 0 and q > 0 the
/// result is 0 through 1/Gamma(0) = 0.
/// Throws DomainError when m + q lands on a pole of Gamma (the value is
/// infinite, or undefined when m is a pole as well).
double rising_factorial(long long m, double q);

/// Generalized binomial coefficient C(p, q) for real p and integer q >= 0.
/// Negative p goes through (-1)^q Gamma(q - p) / (Gamma(q + 1) Gamma(-p)),
/// which also covers negative integer p.
double binom_general(double p, long long q);

/// Kernel of the alpha-th nabla fractional sum:
/// c_j = Gamma(j + alpha) / (Gamma(alpha) Gamma(j + 1)) = (-1)^j C(-alpha, j).
struct CoefficientTable {
  double alpha = 0.0;
  Eigen::VectorXd c;

  std::size_t size() const { return static_cast<std::size_t>(c.size()); }
  double operator[](std::size_t j) const { return c(static_cast<Eigen::Index>(j)); }
};

/// c_0..c_J by the multiplicative recurrence c_j = c_{j-1} (j - 1 + alpha) / j.
/// alpha = 0 is admitted and yields the identity kernel (1, 0, 0, ...), which
/// is how integer-order Caputo differences reduce to plain backward differences.
CoefficientTable sum_coefficients(double alpha, std::size_t J);

}  // namespace nabla
