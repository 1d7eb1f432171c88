#include "nabla/classifier.hpp"

#include <cmath>

#include <boost/math/constants/constants.hpp>

namespace nabla {

namespace {

constexpr double kPi = boost::math::constants::pi<double>();

bool near(double x, double target, double tol) { return std::abs(x - target) <= tol * std::max(1.0, std::abs(target)); }

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Divergent: return "Divergent";
    case Verdict::Convergent: return "Convergent";
    case Verdict::MonotoneConvergent: return "MonotoneConvergent";
    case Verdict::ConvergentPossibleOvershoot: return "ConvergentPossibleOvershoot";
    case Verdict::Constant: return "Constant";
    case Verdict::PolynomialDivergent: return "PolynomialDivergent";
    case Verdict::Oscillating: return "Oscillating";
    case Verdict::OnBoundary: return "OnBoundary";
  }
  return "?";
}

const char* to_string(PoleRegion r) {
  switch (r) {
    case PoleRegion::InsideCircle: return "InsideCircle";
    case PoleRegion::OutsideCircle: return "OutsideCircle";
    case PoleRegion::OnCircle: return "OnCircle";
  }
  return "?";
}

const char* to_string(EmpiricalKind k) {
  switch (k) {
    case EmpiricalKind::Convergent: return "Convergent";
    case EmpiricalKind::MonotoneConvergent: return "MonotoneConvergent";
    case EmpiricalKind::Divergent: return "Divergent";
    case EmpiricalKind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

bool predicts_convergence(Verdict v) {
  return v == Verdict::Convergent || v == Verdict::MonotoneConvergent || v == Verdict::ConvergentPossibleOvershoot;
}

std::complex<double> principal_pole(double alpha, double lambda) {
  caputo_order(alpha);
  if (!std::isfinite(lambda)) throw DomainError("principal_pole: lambda must be finite");
  if (lambda == 0.0) throw NoPole("principal_pole: lambda = 0 leaves no pole");
  const double radius = std::pow(std::abs(lambda), 1.0 / alpha);
  if (lambda > 0.0) return {radius, 0.0};
  return std::polar(radius, -kPi / alpha);
}

PoleRegion region_test(std::complex<double> s, double boundary_tol) {
  const double d = std::abs(s - 1.0);
  if (d > 1.0 + boundary_tol) return PoleRegion::OutsideCircle;
  if (d < 1.0 - boundary_tol) return PoleRegion::InsideCircle;
  return PoleRegion::OnCircle;
}

double critical_radius(double alpha) {
  if (!(alpha > 2.0) || !std::isfinite(alpha)) throw DomainError("critical_radius: needs alpha > 2");
  return std::exp(alpha * (std::log(2.0) + std::log(std::cos(kPi / alpha))));
}

BehaviorClass classify_zero_input(double alpha, double lambda, const Eigen::VectorXd& b, double boundary_tol) {
  const int n = caputo_order(alpha);
  if (!std::isfinite(lambda)) throw DomainError("classify: lambda must be finite");
  if (lambda == 1.0) throw DomainError("lambda must not equal 1");
  if (b.size() != n) throw DomainError("classify: expected " + std::to_string(n) + " initial conditions");
  if (!(boundary_tol >= 0.0)) throw DomainError("classify: boundary_tol must be non-negative");

  BehaviorClass out;
  if (lambda == 0.0) {
    const bool flat = n == 1 || b.tail(n - 1).isZero(0.0);
    out.verdict = flat ? Verdict::Constant : Verdict::PolynomialDivergent;
    out.pole = 0.0;
    out.pole_region = region_test(out.pole, boundary_tol);
    return out;
  }

  out.pole = principal_pole(alpha, lambda);
  out.pole_region = region_test(out.pole, boundary_tol);

  if (lambda > 0.0) {
    const double edge = std::pow(2.0, alpha);
    if (near(lambda, edge, boundary_tol)) {
      if (near(alpha, 1.0, boundary_tol)) {
        out.verdict = Verdict::OnBoundary;
      } else {
        out.verdict = alpha < 1.0 ? Verdict::Oscillating : Verdict::Convergent;
      }
    } else {
      out.verdict = lambda < edge ? Verdict::Divergent : Verdict::Convergent;
    }
    return out;
  }

  if (alpha <= 1.0) {
    // s^alpha on the principal sheet never reaches the negative axis when
    // alpha < 1, so there is no zero of s^alpha - lambda at all.
    out.verdict = Verdict::MonotoneConvergent;
    out.pole_region = PoleRegion::OutsideCircle;
  } else if (alpha <= 2.0) {
    out.verdict = Verdict::ConvergentPossibleOvershoot;
  } else {
    const double rc = critical_radius(alpha);
    if (near(-lambda, rc, boundary_tol)) {
      out.verdict = Verdict::Oscillating;
    } else {
      out.verdict = -lambda < rc ? Verdict::Divergent : Verdict::Convergent;
    }
  }
  return out;
}

}  // namespace nabla
