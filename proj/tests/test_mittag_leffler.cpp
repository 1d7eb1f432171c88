#include "doctest.h"

#include <cmath>
#include <complex>

#include "nabla/mittag_leffler.hpp"
#include "nabla/special_fn.hpp"

using namespace nabla;

namespace {

double F(double alpha, double beta, double lambda, Index m, double tol = kDefaultMlTol) {
  return ml_eval({alpha, beta, lambda, 0, m}, tol).value;
}

bool rel_close(double got, double want, double tol) { return std::abs(got - want) <= tol * std::max(1.0, std::abs(want)); }

}  // namespace

TEST_CASE("ml_eval: trivial and closed values") {
  for (Index m = 1; m < 30; ++m) CHECK(F(0.7, 1.0, 0.0, m) == doctest::Approx(1.0));
  CHECK(F(1.0, 1.0, -0.2, 3) == doctest::Approx(0.5787037).epsilon(1e-7));
  CHECK(F(1.0, 1.0, -0.2, 3) == doctest::Approx(std::pow(1.2, -3.0)).epsilon(1e-13));
  for (double alpha : {0.3, 1.5, 2.5}) CHECK(F(alpha, 2.0, -0.3, 0) == 0.0);
  CHECK(F(0.4, 1.0, 0.6, 0) == 1.0);
}

TEST_CASE("ml_eval: F_{1.5,2}(-0.2, a+2) from the series") {
  // (2 - alpha)/(1 - lambda) + alpha/(1 - lambda)^2 = 0.5/1.2 + 1.5/1.44
  const auto r = ml_eval({1.5, 2.0, -0.2, 7, 9});
  CHECK(r.value == doctest::Approx(1.4583333333333333).epsilon(1e-12));
  CHECK(r.path == MLPath::Series);
}

TEST_CASE("ml_eval against 250-digit references") {
  struct Ref {
    double alpha, beta, lambda;
    Index m;
    double value;
  };
  const Ref refs[] = {
      {0.5, 1.0, -0.2, 10, 0.559816144217657323},
      {0.7, 1.0, -0.9, 60, 0.022480509640465155885},
      {2.5, 1.0, 0.5, 30, 1202185474968547176.5},
      {1.5, 1.5, 0.3, 20, 145087.76325038568201},
      {0.3, 1.0, -0.5, 40, 0.35444427376954339807},
      {2.8, 3.0, -0.7, 25, -0.022475951715504404385},
      {1.2, 1.2, 0.0, 7, 1.5887872},
      {0.5, 1.0, -0.9, 100, 0.062536966733457222374},
      {0.5, 1.0, -0.9, 60, 0.080606682437085633759},
  };
  for (const auto& r : refs) {
    CAPTURE(r.alpha);
    CAPTURE(r.lambda);
    CAPTURE(r.m);
    const auto got = ml_eval({r.alpha, r.beta, r.lambda, 0, r.m});
    CHECK(rel_close(got.value, r.value, 1e-10));
    CHECK(got.truncation_bound <= kDefaultMlTol * (1.0 + std::abs(got.value)));
  }
}

TEST_CASE("ml_eval picks extended precision only when the series cancels") {
  CHECK(ml_eval({0.5, 1.0, 0.5, 0, 40}).working_digits == 15);
  CHECK(ml_eval({0.5, 1.0, -0.9, 0, 100}).working_digits > 15);
}

TEST_CASE("ml_eval error paths") {
  CHECK_THROWS_AS(ml_eval({0.5, 1.0, -1.5, 0, 5}), SeriesNotConvergent);
  CHECK_THROWS_AS(ml_eval({0.5, 1.0, 2.0, 0, 5}), SeriesNotConvergent);
  CHECK_THROWS_AS(ml_eval({0.5, 1.0, 0.2, 5, 4}), DomainError);
  CHECK_THROWS_AS(ml_eval({0.0, 1.0, 0.2, 0, 4}), DomainError);
  CHECK_THROWS_AS(ml_eval({0.5, -1.0, 0.2, 0, 4}), DomainError);
  CHECK_THROWS_AS(ml_eval({0.5, 1.0, 0.2, 0, 4}, 0.0), DomainError);
  // first step is finite for any lambda != 1
  CHECK(ml_eval({0.5, 1.0, 3.0, 0, 1}).value == doctest::Approx(-0.5));
}

TEST_CASE("ml_sample agrees with pointwise evaluation") {
  for (double lambda : {-0.9, -0.4, 0.0, 0.6}) {
    const auto row = ml_sample(1.3, 1.0, lambda, 2, 80);
    REQUIRE(row.size() == 81);
    for (Index m = 0; m <= 80; ++m) {
      CAPTURE(lambda);
      CAPTURE(m);
      const double point = ml_eval({1.3, 1.0, lambda, 2, 2 + m}).value;
      CHECK(rel_close(row[static_cast<std::size_t>(m)].value, point, 1e-10));
    }
  }
}

TEST_CASE("ml_alpha1_closed") {
  CHECK(ml_alpha1_closed(-0.2, 1, 0) == doctest::Approx(0.8333333).epsilon(1e-7));
  CHECK(ml_alpha1_closed(0.4, 5, 5) == 1.0);
  CHECK(ml_alpha1_closed(0.5, 2, 0) == doctest::Approx(4.0));
  CHECK_THROWS_AS(ml_alpha1_closed(1.0, 3, 0), DomainError);
}

TEST_CASE("series for alpha = 1 matches the geometric closed form") {
  // the truncation rule is absolute, so relative accuracy on tiny values needs a tight tol
  for (double lambda : {-0.9, -0.5, -0.2, 0.2, 0.9}) {
    for (Index m = 0; m <= 60; ++m) {
      const double want = ml_alpha1_closed(lambda, m, 0);
      CHECK(std::abs(F(1.0, 1.0, lambda, m, 1e-30) - want) <= 1e-10 * std::abs(want));
    }
  }
}

TEST_CASE("integer-order partial fractions agree with the series") {
  for (int n : {1, 2, 3}) {
    for (int beta = 1; beta <= n; ++beta) {
      for (double lambda : {-0.7, -0.2, 0.3, 0.8}) {
        for (Index m = 0; m <= 30; ++m) {
          CAPTURE(n);
          CAPTURE(beta);
          CAPTURE(lambda);
          CAPTURE(m);
          const double series = ml_eval({double(n), double(beta), lambda, 0, m}, 1e-15).value;
          CHECK(rel_close(ml_integer_order_closed(n, beta, lambda, m, 0), series, 1e-10));
        }
      }
    }
  }
  CHECK_THROWS_AS(ml_integer_order_closed(2, 3, 0.5, 4, 0), DomainError);
  CHECK_THROWS_AS(ml_integer_order_closed(2, 1, 0.0, 4, 0), DomainError);
}

TEST_CASE("integer alpha with |lambda| > 1 goes through the closed form") {
  const auto r = ml_eval({2.0, 1.0, 4.0, 0, 6});
  CHECK(r.path == MLPath::IntegerClosed);
  // F_{1,1}(3, k) = (-2)^{-m}
  CHECK(ml_eval({1.0, 1.0, 3.0, 0, 5}).value == doctest::Approx(std::pow(-2.0, -5.0)));
}

TEST_CASE("ml_boundary_values") {
  const auto v = ml_boundary_values(1.5, -0.2);
  CHECK(v.at_a == 0.0);
  CHECK(v.at_a1 == doctest::Approx(0.8333333).epsilon(1e-7));
  CHECK(v.at_a2 == doctest::Approx(1.4583333).epsilon(1e-7));
  const auto z = ml_boundary_values(0.8, 0.0);
  CHECK(z.at_a1 == doctest::Approx(1.0));
  CHECK(z.at_a2 == doctest::Approx(2.0));  // F_{alpha,2}(0, a+2) = 2^{(1)} = 2
  for (double alpha : {0.5, 1.1, 1.5, 2.0}) {
    for (double lambda : {-0.5, -0.04, 0.3}) {
      const auto b = ml_boundary_values(alpha, lambda);
      CHECK(b.at_a == F(alpha, 2.0, lambda, 0));
      CHECK(rel_close(b.at_a1, F(alpha, 2.0, lambda, 1), 1e-12));
      CHECK(rel_close(b.at_a2, F(alpha, 2.0, lambda, 2), 1e-12));
    }
  }
}

TEST_CASE("ml_transform_point") {
  const std::complex<double> s(0.7, 0.2);
  CHECK(std::abs(ml_transform_point(0.6, 0.6, 0.0, s) - std::pow(s, -0.6)) < 1e-14);
  CHECK(std::abs(ml_transform_point(1.0, 1.0, -0.2, 1.0) - 0.8333333333333334) < 1e-14);
  const double want = std::pow(0.5, -0.5) / (std::pow(0.5, 1.5) + 0.2);
  CHECK(std::abs(ml_transform_point(1.5, 2.0, -0.2, 0.5) - want) < 1e-14);
  CHECK_THROWS_AS(ml_transform_point(1.0, 1.0, 0.9, 0.5), DomainError);
  CHECK_THROWS_AS(ml_transform_point(1.0, 1.0, 0.2, 0.0), DomainError);
}

TEST_CASE("F_{alpha,1} lies above F_{1,1} for lambda < 0, 0 < alpha < 1") {
  for (int ia = 1; ia <= 9; ++ia) {
    for (int il = 1; il <= 9; ++il) {
      const double alpha = 0.1 * ia, lambda = -0.1 * il;
      const auto row = ml_sample(alpha, 1.0, lambda, 0, 50);
      for (Index m = 0; m <= 50; ++m) {
        CHECK(row[static_cast<std::size_t>(m)].value >= ml_alpha1_closed(lambda, m, 0) - 1e-12);
      }
    }
  }
}

TEST_CASE("F_{alpha,1} decreases for lambda < 0, 0 < alpha < 1") {
  for (double alpha : {0.2, 0.5, 0.9}) {
    for (double lambda : {-0.8, -0.3}) {
      const auto row = ml_sample(alpha, 1.0, lambda, 0, 120);
      for (std::size_t m = 1; m < row.size(); ++m) CHECK(row[m].value - row[m - 1].value < 1e-12);
    }
  }
}

TEST_CASE("F_{1.5,1}(-0.2) changes sign") {
  const auto row = ml_sample(1.5, 1.0, -0.2, 0, 500);
  bool negative = false;
  for (const auto& r : row) negative = negative || r.value < 0.0;
  CHECK(negative);
}

TEST_CASE("F_{1.5,2}(-0.2) decays only like (k-a)^{1-alpha}") {
  // exact-recursion values (b = (0, 1) response) at m = 500, 1000, 2000
  const double at500 = 0.126251294173206, at1000 = 0.0892396713523643, at2000 = 0.06309014294307266;
  CHECK(rel_close(ml_eval({1.5, 2.0, -0.2, 0, 500}).value, at500, 1e-9));
  CHECK(at1000 / at2000 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-3));
  CHECK(at500 / at1000 == doctest::Approx(std::sqrt(2.0)).epsilon(2e-3));
  CHECK(at2000 > 1e-3);
}

TEST_CASE("ml_signal layout") {
  const auto s = ml_signal(0.5, 1.0, -0.2, 3, 10);
  CHECK(s.origin() == 3);
  CHECK(s.history_start() == 3);
  CHECK(s.horizon() == 10);
  CHECK(s(3) == 1.0);
  CHECK(s(4) == doctest::Approx(1.0 / 1.2));
}
