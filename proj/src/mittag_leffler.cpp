#include "nabla/mittag_leffler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "nabla/special_fn.hpp"

namespace nabla {

namespace {

namespace bmp = boost::multiprecision;

template <unsigned Digits>
using Wide = bmp::number<bmp::cpp_bin_float<Digits>, bmp::et_off>;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kDoubleDigits = 15;
constexpr int kWideTiers[] = {40, 80, 160, 320, 640};

struct Params {
  double alpha;
  double beta;
  double lambda;
};

void validate(double alpha, double beta, double lambda) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("Mittag-Leffler: alpha must be positive");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("Mittag-Leffler: beta must be positive");
  if (!std::isfinite(lambda)) throw DomainError("Mittag-Leffler: lambda must be finite");
}

bool is_integer(double x) { return x == std::floor(x); }

bool integer_closed_applies(const Params& p) {
  return is_integer(p.alpha) && is_integer(p.beta) && p.beta >= 1.0 && p.beta <= p.alpha && p.lambda != 0.0;
}

// k = a: every rising factorial 0^{(q)} with q > 0 or q in (-1, 0) carries
// 1/Gamma(0) = 0; only a term with j alpha + beta - 1 == 0 exactly survives.
MLResult value_at_origin(const Params& p) {
  MLResult r;
  r.path = MLPath::Finite;
  if (p.beta == 1.0) {
    r.value = 1.0;
    r.terms_used = 1;
    return r;
  }
  if (p.beta < 1.0) {
    const double j = std::round((1.0 - p.beta) / p.alpha);
    if (j >= 1.0 && j * p.alpha + p.beta - 1.0 == 0.0) {
      r.value = std::pow(p.lambda, j);
      r.terms_used = static_cast<std::size_t>(j) + 1;
    }
  }
  return r;
}

// k = a+1: every term is lambda^j, so the value is the geometric sum
// (its analytic continuation when |lambda| >= 1).
MLResult value_at_first_step(const Params& p) {
  if (p.lambda == 1.0) throw DomainError("Mittag-Leffler: lambda must not equal 1");
  MLResult r;
  r.path = MLPath::Finite;
  r.value = 1.0 / (1.0 - p.lambda);
  return r;
}

// log|t_j| for m = k - a >= 2, where t_j = lambda^j m^{(x_j - 1)} / Gamma(x_j), x_j = j alpha + beta.
double log_term(const Params& p, double log_abs_lambda, Index m, std::size_t j) {
  const double x = static_cast<double>(j) * p.alpha + p.beta;
  const double md = static_cast<double>(m);
  return static_cast<double>(j) * log_abs_lambda + log_gamma_signed(md + x - 1.0).log_magnitude -
         log_gamma_signed(md).log_magnitude - log_gamma_signed(x).log_magnitude;
}

double log_add_exp(double x, double y) {
  if (x == -kInf) return y;
  if (y == -kInf) return x;
  const double hi = std::max(x, y);
  return hi + std::log1p(std::exp(std::min(x, y) - hi));
}

// Running form of the truncation rule: stop after two consecutive terms that
// are below tol (1 + |partial|) and past the peak of |t_j|. log|t_j| is
// concave in j, so once it decreases it keeps decreasing.
class TruncationRule {
 public:
  explicit TruncationRule(double tol) : tol_(tol) {}

  bool push(double abs_term, double abs_partial) {
    if (abs_term < tol_ * (1.0 + abs_partial) && abs_term <= prev_) {
      ++small_run_;
    } else {
      small_run_ = 0;
    }
    prev_ = abs_term;
    return small_run_ >= 2;
  }

 private:
  double tol_;
  double prev_ = kInf;
  int small_run_ = 0;
};

// Summation in double with log-space terms. Also yields the conditioning
// data used to pick a wider tier.
struct DoublePass {
  MLResult result;
  double log_abs_sum = -kInf;  // log sum_j |t_j| up to the planning cut
  std::size_t plan_terms = 0;  // conservative term count: |t_j| < tol ignoring the partial sum
  double error_estimate = kInf;
  bool converged = false;
  bool overflow = false;
};

DoublePass double_pass(const Params& p, Index m, double tol) {
  DoublePass out;
  const double log_abs_lambda = std::log(std::abs(p.lambda));
  const double log_tol = std::log(tol);
  double partial = 0.0;
  double max_abs_log = 0.0;
  TruncationRule rule(tol);
  bool rule_fired = false;
  double prev_log = kInf;
  int plan_run = 0;

  for (std::size_t j = 0; j < kMaxSeriesTerms; ++j) {
    const double L = log_term(p, log_abs_lambda, m, j);
    const double sign = (p.lambda < 0.0 && (j % 2 == 1)) ? -1.0 : 1.0;
    const double t = sign * std::exp(L);
    out.log_abs_sum = log_add_exp(out.log_abs_sum, L);
    max_abs_log = std::max(max_abs_log, std::abs(L));

    if (!rule_fired && !out.overflow) {
      partial += t;
      out.overflow = !std::isfinite(partial);
      if (!out.overflow && rule.push(std::abs(t), std::abs(partial))) {
        rule_fired = true;
        out.result.terms_used = j + 1;
        out.result.truncation_bound = std::exp(log_term(p, log_abs_lambda, m, j + 1));
      }
    }

    plan_run = (L < log_tol && L <= prev_log) ? plan_run + 1 : 0;
    prev_log = L;
    if (plan_run >= 2 && (rule_fired || out.overflow)) {
      out.plan_terms = j + 1;
      out.converged = true;
      break;
    }
  }
  if (!out.converged || out.overflow) return out;

  out.result.value = partial;
  out.result.path = MLPath::Series;
  out.result.working_digits = kDoubleDigits;
  // Each log-space term carries a relative error of order eps (1 + |L|);
  // recursive summation adds at most eps * J * sum|t|.
  out.error_estimate =
      kEps * std::exp(out.log_abs_sum) * (8.0 * (1.0 + max_abs_log) + static_cast<double>(out.plan_terms));
  return out;
}

bool double_pass_acceptable(const DoublePass& d, double tol) {
  return d.converged && !d.overflow && std::isfinite(d.result.value) && d.error_estimate <= 0.5 * tol * (1.0 + std::abs(d.result.value));
}

// Smallest wide tier whose rounding error, bounded by u (m + J + 10) sum|t|,
// stays below tol / 10. Returns 0 when no tier is wide enough.
int digits_for(double log_abs_sum, Index m, std::size_t terms, double tol) {
  const double need = log_abs_sum / std::numbers::ln10 +
                      std::log10(static_cast<double>(m) + static_cast<double>(terms) + 10.0) - std::log10(tol) + 2.0;
  for (int d : kWideTiers) {
    if (need <= d) return d;
  }
  return 0;
}

template <typename Real>
MLResult wide_point(const Params& p, Index m, double tol) {
  const Real alpha(p.alpha);
  const Real beta(p.beta);
  const Real lambda(p.lambda);
  Real fact(1);
  for (Index i = 2; i < m; ++i) fact *= Real(i);
  const Real inv_fact = Real(1) / fact;

  // t_j = lambda^j prod_{i=0}^{m-2} (x_j + i) / (m-1)!
  auto term = [&](std::size_t j, const Real& lambda_pow) {
    const Real x = beta + alpha * Real(j);
    Real prod = lambda_pow;
    for (Index i = 0; i + 2 <= m; ++i) prod *= x + Real(i);
    return Real(prod * inv_fact);
  };

  MLResult r;
  r.path = MLPath::Series;
  r.working_digits = std::numeric_limits<Real>::digits10;
  Real partial(0);
  Real lambda_pow(1);
  TruncationRule rule(tol);
  for (std::size_t j = 0; j < kMaxSeriesTerms; ++j) {
    const Real t = term(j, lambda_pow);
    partial += t;
    if (rule.push(static_cast<double>(abs(t)), static_cast<double>(abs(partial)))) {
      r.terms_used = j + 1;
      r.truncation_bound = static_cast<double>(abs(term(j + 1, Real(lambda_pow * lambda))));
      r.value = static_cast<double>(partial);
      return r;
    }
    lambda_pow *= lambda;
  }
  throw NonConvergedAtCap("Mittag-Leffler series: term cap reached");
}

MLResult dispatch_wide_point(int digits, const Params& p, Index m, double tol) {
  switch (digits) {
    case 40: return wide_point<Wide<40>>(p, m, tol);
    case 80: return wide_point<Wide<80>>(p, m, tol);
    case 160: return wide_point<Wide<160>>(p, m, tol);
    case 320: return wide_point<Wide<320>>(p, m, tol);
    case 640: return wide_point<Wide<640>>(p, m, tol);
    default: break;
  }
  throw NonConvergedAtCap("Mittag-Leffler series: cancellation exceeds the widest precision tier");
}

// Values for m = 2..K in one pass. T_j carries lambda^j prod_{i<m-1}(x_j + i)
// and is advanced by one factor per m. Entries where the rule does not fire
// within the J retained terms are left with terms_used == 0.
template <typename Real>
void wide_sweep(const Params& p, Index K, std::size_t J, double tol, std::vector<MLResult>& out) {
  const Real lambda(p.lambda);
  std::vector<Real> T(J + 1);
  std::vector<Real> X(J + 1);
  Real lambda_pow(1);
  for (std::size_t j = 0; j <= J; ++j) {
    T[j] = lambda_pow;
    X[j] = Real(p.beta) + Real(p.alpha) * Real(j);
    lambda_pow *= lambda;
  }
  Real fact(1);
  for (Index m = 2; m <= K; ++m) {
    fact *= Real(m - 1);
    const Real inv_fact = Real(1) / fact;
    const Real shift(m - 2);
    Real partial(0);
    TruncationRule rule(tol);
    std::size_t stop = 0;
    for (std::size_t j = 0; j <= J; ++j) {
      T[j] *= X[j] + shift;
      if (stop == 0) {
        const Real t = T[j] * inv_fact;
        partial += t;
        if (rule.push(static_cast<double>(abs(t)), static_cast<double>(abs(partial)))) stop = j + 1;
      }
    }
    MLResult& r = out[static_cast<std::size_t>(m)];
    r.path = MLPath::Series;
    r.working_digits = std::numeric_limits<Real>::digits10;
    if (stop == 0 || stop > J) {
      r.terms_used = 0;
      continue;
    }
    r.value = static_cast<double>(partial);
    r.terms_used = stop;
    r.truncation_bound = static_cast<double>(abs(T[stop] * inv_fact));
  }
}

void dispatch_wide_sweep(int digits, const Params& p, Index K, std::size_t J, double tol,
                         std::vector<MLResult>& out) {
  switch (digits) {
    case 40: return wide_sweep<Wide<40>>(p, K, J, tol, out);
    case 80: return wide_sweep<Wide<80>>(p, K, J, tol, out);
    case 160: return wide_sweep<Wide<160>>(p, K, J, tol, out);
    case 320: return wide_sweep<Wide<320>>(p, K, J, tol, out);
    case 640: return wide_sweep<Wide<640>>(p, K, J, tol, out);
    default: break;
  }
  throw NonConvergedAtCap("Mittag-Leffler series: cancellation exceeds the widest precision tier");
}

MLResult lambda_zero(const Params& p, Index m) {
  MLResult r;
  r.path = MLPath::Series;
  r.terms_used = 1;
  r.value = rising_factorial(m, p.beta - 1.0) * reciprocal_gamma(p.beta);
  return r;
}

MLResult series_point(const Params& p, Index m, double tol) {
  if (p.lambda == 0.0) return lambda_zero(p, m);
  const DoublePass d = double_pass(p, m, tol);
  if (!d.converged) throw NonConvergedAtCap("Mittag-Leffler series: term cap reached");
  if (double_pass_acceptable(d, tol)) return d.result;
  const int digits = digits_for(d.log_abs_sum, m, d.plan_terms, tol);
  return dispatch_wide_point(digits, p, m, tol);
}

MLResult integer_closed(const Params& p, Index m) {
  MLResult r;
  r.path = MLPath::IntegerClosed;
  r.value = ml_integer_order_closed(static_cast<int>(p.alpha), static_cast<int>(p.beta), p.lambda, m, 0);
  return r;
}

MLResult eval_at(const Params& p, Index m, double tol) {
  if (m == 0) return value_at_origin(p);
  if (m == 1) return value_at_first_step(p);
  if (std::abs(p.lambda) < 1.0) return series_point(p, m, tol);
  if (integer_closed_applies(p)) return integer_closed(p, m);
  throw SeriesNotConvergent("Mittag-Leffler series diverges for |lambda| >= 1 (lambda = " + std::to_string(p.lambda) +
                            "); use the recursive solver");
}

void check_tol(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) throw DomainError("Mittag-Leffler: tol must be positive");
}

}  // namespace

MLResult ml_eval(const MLQuery& q, double tol) {
  validate(q.alpha, q.beta, q.lambda);
  check_tol(tol);
  if (q.k < q.a) throw DomainError("Mittag-Leffler: k must satisfy k >= a");
  return eval_at(Params{q.alpha, q.beta, q.lambda}, q.k - q.a, tol);
}

std::vector<MLResult> ml_sample(double alpha, double beta, double lambda, Index a, Index K, double tol) {
  (void)a;  // values depend on k - a only
  validate(alpha, beta, lambda);
  check_tol(tol);
  if (K < 0) throw DomainError("ml_sample: K must be non-negative");
  const Params p{alpha, beta, lambda};
  std::vector<MLResult> out(static_cast<std::size_t>(K) + 1);
  for (Index m = 0; m <= std::min<Index>(K, 1); ++m) out[static_cast<std::size_t>(m)] = eval_at(p, m, tol);
  if (K < 2) return out;

  if (std::abs(lambda) >= 1.0 || lambda == 0.0) {
    for (Index m = 2; m <= K; ++m) out[static_cast<std::size_t>(m)] = eval_at(p, m, tol);
    return out;
  }

  bool all_double = true;
  DoublePass widest;
  for (Index m = 2; m <= K; ++m) {
    DoublePass d = double_pass(p, m, tol);
    if (!d.converged) throw NonConvergedAtCap("Mittag-Leffler series: term cap reached");
    if (double_pass_acceptable(d, tol)) {
      out[static_cast<std::size_t>(m)] = d.result;
    } else {
      all_double = false;
    }
    if (m == K) widest = d;
  }
  if (all_double) return out;

  // The conditioning and the term count both grow with m, so the last point
  // fixes the tier and the number of retained terms for the whole sweep.
  const int digits = digits_for(widest.log_abs_sum, K, widest.plan_terms, tol);
  dispatch_wide_sweep(digits, p, K, widest.plan_terms + 2, tol, out);
  for (Index m = 2; m <= K; ++m) {
    auto& r = out[static_cast<std::size_t>(m)];
    if (r.terms_used == 0) r = series_point(p, m, tol);
  }
  return out;
}

SampledSignal ml_signal(double alpha, double beta, double lambda, Index a, Index K, double tol) {
  const auto results = ml_sample(alpha, beta, lambda, a, K, tol);
  Eigen::VectorXd v(static_cast<Eigen::Index>(results.size()));
  for (std::size_t i = 0; i < results.size(); ++i) v(static_cast<Eigen::Index>(i)) = results[i].value;
  return SampledSignal(a, a, std::move(v));
}

double ml_alpha1_closed(double lambda, Index k, Index a) {
  if (lambda == 1.0) throw DomainError("ml_alpha1_closed: lambda must not equal 1");
  if (k < a) throw DomainError("ml_alpha1_closed: k must satisfy k >= a");
  return std::pow(1.0 - lambda, -static_cast<double>(k - a));
}

double ml_integer_order_closed(int n, int beta, double lambda, Index k, Index a) {
  if (n < 1) throw DomainError("ml_integer_order_closed: order must be a positive integer");
  if (beta < 1 || beta > n) throw DomainError("ml_integer_order_closed: beta must be an integer in [1, n]");
  if (lambda == 1.0) throw DomainError("ml_integer_order_closed: lambda must not equal 1");
  if (lambda == 0.0) throw DomainError("ml_integer_order_closed: lambda = 0 has a repeated root; use ml_eval");
  if (k < a) throw DomainError("ml_integer_order_closed: k must satisfy k >= a");
  const double radius = std::pow(std::abs(lambda), 1.0 / n);
  const double phase0 = lambda < 0.0 ? std::numbers::pi : 0.0;
  const double m = static_cast<double>(k - a);
  std::complex<double> acc(0.0, 0.0);
  for (int i = 0; i < n; ++i) {
    const auto r = std::polar(radius, (phase0 + 2.0 * std::numbers::pi * i) / n);
    acc += std::pow(r, static_cast<double>(1 - beta)) * std::pow(1.0 - r, -m);
  }
  return acc.real() / n;
}

MLBoundaryValues ml_boundary_values(double alpha, double lambda) {
  if (!(alpha > 0.0)) throw DomainError("ml_boundary_values: alpha must be positive");
  if (lambda == 1.0) throw DomainError("ml_boundary_values: lambda must not equal 1");
  const double g = 1.0 / (1.0 - lambda);
  // Coefficients of w^0, w^1 in (1-w)^{alpha-2} / ((1-w)^alpha - lambda).
  return {0.0, g, (2.0 - alpha) * g + alpha * g * g};
}

std::complex<double> ml_transform_point(double alpha, double beta, double lambda, std::complex<double> s) {
  validate(alpha, beta, lambda);
  if (s == std::complex<double>(0.0, 0.0)) throw DomainError("ml_transform_point: s must be nonzero");
  const auto s_alpha = std::pow(s, alpha);
  if (std::abs(lambda) >= std::abs(s_alpha)) {
    throw DomainError("ml_transform_point: requires |lambda| < |s|^alpha");
  }
  const auto den = s_alpha - lambda;
  if (std::abs(den) == 0.0) throw DomainError("ml_transform_point: s is a pole");
  return std::pow(s, alpha - beta) / den;
}

}  // namespace nabla
