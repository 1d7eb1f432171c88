#pragma once

// Zero-input behavior of the scalar system from the location of the pole of
// Y(s) = sum b_kappa s^{alpha-kappa-1} / (s^alpha - lambda) relative to the
// circle |s - 1| = 1, plus an empirical check on a computed response.

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

#include "nabla/solver.hpp"
#include "nabla/special_fn.hpp"

namespace nabla {

enum class Verdict {
  Divergent,
  Convergent,
  MonotoneConvergent,
  ConvergentPossibleOvershoot,
  Constant,
  PolynomialDivergent,
  Oscillating,
  OnBoundary,
};

enum class PoleRegion { InsideCircle, OutsideCircle, OnCircle };

struct BehaviorClass {
  Verdict verdict = Verdict::OnBoundary;
  std::complex<double> pole;  // 0 when lambda = 0 (no pole)
  PoleRegion pole_region = PoleRegion::OnCircle;
};

/// lambda = 0: the transform b_0/s + b_1/s^2 + ... has no pole of s^alpha - lambda.
class NoPole : public std::domain_error {
 public:
  explicit NoPole(const std::string& what) : std::domain_error(what) {}
};

const char* to_string(Verdict v);
const char* to_string(PoleRegion r);

/// True for the verdicts that promise y(k) -> 0.
bool predicts_convergence(Verdict v);

/// lambda^{1/alpha} for lambda > 0, |lambda|^{1/alpha} e^{-i pi/alpha} for lambda < 0.
std::complex<double> principal_pole(double alpha, double lambda);

PoleRegion region_test(std::complex<double> s, double boundary_tol);

/// 2^alpha cos^alpha(pi/alpha), alpha > 2.
double critical_radius(double alpha);

inline constexpr double kAnalyticBoundaryTol = 1e-9;

BehaviorClass classify_zero_input(double alpha, double lambda, const Eigen::VectorXd& b,
                                  double boundary_tol = kAnalyticBoundaryTol);

enum class EmpiricalKind { Convergent, MonotoneConvergent, Divergent, Inconclusive };

const char* to_string(EmpiricalKind k);

struct EmpiricalVerdict {
  EmpiricalKind kind = EmpiricalKind::Inconclusive;
  bool overshoot = false;
  double tail_ratio = 0.0;    // max|y| over the last 10% / max|y|
  double growth_ratio = 0.0;  // |y(a+K)| / max|y| over the first 10%
};

inline constexpr Index kEmpiricalMinHorizon = 500;
inline constexpr double kDefaultTolZero = 0.75;
inline constexpr double kDefaultTolMono = 1e-12;

/// Largest excursion of y to the side opposite sign(y(a+1)); 0 when there is none.
template <typename Scalar>
Scalar overshoot_magnitude(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& y) {
  if (y.size() == 0 || y(0) == Scalar(0)) return Scalar(0);
  const Scalar sign = y(0) > Scalar(0) ? Scalar(1) : Scalar(-1);
  Scalar worst(0);
  for (Eigen::Index i = 0; i < y.size(); ++i) worst = std::max(worst, -sign * y(i));
  return worst;
}

/// Tail test on a long response. tol_zero bounds the tail window relative to
/// the global maximum; tol_mono is the relative slack allowed in the sign of
/// grad y and in the overshoot test.
template <typename Scalar>
EmpiricalVerdict empirical_classify(const BasicResponse<Scalar>& r, double tol_zero = kDefaultTolZero,
                                    double tol_mono = kDefaultTolMono) {
  using std::abs;
  const Index K = r.horizon();
  if (K < kEmpiricalMinHorizon) {
    throw DomainError("empirical_classify: horizon " + std::to_string(K) + " is shorter than " +
                      std::to_string(kEmpiricalMinHorizon));
  }
  const auto& y = r.y;
  const Eigen::Index window = static_cast<Eigen::Index>((K + 9) / 10);
  const Scalar peak = y.cwiseAbs().maxCoeff();

  EmpiricalVerdict out;
  if (peak == Scalar(0)) {
    out.kind = EmpiricalKind::Convergent;
    return out;
  }
  const Scalar early = y.head(window).cwiseAbs().maxCoeff();
  const Scalar tail = y.tail(window).cwiseAbs().maxCoeff();
  out.tail_ratio = static_cast<double>(tail / peak);
  out.growth_ratio = early > Scalar(0) ? static_cast<double>(abs(y(K - 1)) / early) : INFINITY;

  const Scalar slack = Scalar(tol_mono) * peak;
  out.overshoot = overshoot_magnitude<Scalar>(y) > slack;

  if (out.growth_ratio > 10.0) {
    out.kind = EmpiricalKind::Divergent;
  } else if (out.tail_ratio < tol_zero) {
    bool rising = false, falling = false;
    for (Eigen::Index i = 1; i < y.size(); ++i) {
      const Scalar d = y(i) - y(i - 1);
      if (d > slack) rising = true;
      if (d < -slack) falling = true;
    }
    out.kind = (rising && falling) ? EmpiricalKind::Convergent : EmpiricalKind::MonotoneConvergent;
  }
  return out;
}

inline bool empirical_converges(EmpiricalKind k) {
  return k == EmpiricalKind::Convergent || k == EmpiricalKind::MonotoneConvergent;
}

}  // namespace nabla
