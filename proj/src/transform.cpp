#include "nabla/transform.hpp"

#include <cmath>

namespace nabla {

std::complex<double> response_transform_eval(const ResponseTransform& rt, std::complex<double> s) {
  const int n = caputo_order(rt.alpha);
  if (rt.b.size() != n) throw DomainError("response_transform_eval: b must have ceil(alpha) entries");
  if (rt.lambda == 1.0) throw DomainError("response_transform_eval: lambda must not equal 1");
  if (s == std::complex<double>(0.0, 0.0)) throw DomainError("response_transform_eval: s must be nonzero");

  const auto den = std::pow(s, rt.alpha) - rt.lambda;
  if (std::abs(den) <= 1e-14 * std::max(1.0, std::abs(rt.lambda))) {
    throw DomainError("response_transform_eval: s is a pole (s^alpha = lambda)");
  }
  std::complex<double> acc(0.0, 0.0);
  for (int kappa = 0; kappa < n; ++kappa) acc += rt.b(kappa) * std::pow(s, rt.alpha - kappa - 1.0);
  return acc / den;
}

}  // namespace nabla
