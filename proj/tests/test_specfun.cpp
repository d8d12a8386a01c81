#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dunkl/error.hpp"
#include "dunkl/specfun.hpp"

using namespace dunkl;
using std::numbers::pi;

namespace {

// Independent oracle: Bessel functions from the C++17 special math library.
double j_oracle(double lam, double t) {
  if (t == 0.0) return 1.0;
  return std::exp(lam * std::log(2.0) + std::lgamma(lam + 1.0) - lam * std::log(t)) * std::cyl_bessel_j(lam, t);
}

double i_oracle(double lam, double t) {
  if (t == 0.0) return 1.0;
  return std::exp(lam * std::log(2.0) + std::lgamma(lam + 1.0) - lam * std::log(t)) * std::cyl_bessel_i(lam, t);
}

// Composite Simpson on [0, pi].
template <class F>
double simpson(F f, int n = 20000) {
  const double h = pi / n;
  double s = f(0.0) + f(pi);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(i * h);
  return s * h / 3.0;
}

}  // namespace

TEST_CASE("gamma_ln values and recurrence") {
  CHECK(gamma_ln(1.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(gamma_ln(0.5) == doctest::Approx(0.5723649429247001).epsilon(1e-14));
  CHECK(gamma_ln(1.25) - gamma_ln(0.25) == doctest::Approx(std::log(0.25)).epsilon(1e-13));
  for (double x : {1e-3, 0.1, 0.7, 3.3, 17.5, 123.4, 999.0}) {
    CHECK(std::abs(gamma_ln(x) - std::lgamma(x)) <= 1e-13 * std::max(1.0, std::abs(std::lgamma(x))));
  }
  CHECK_THROWS_AS(gamma_ln(0.0), DomainError);
  CHECK_THROWS_AS(gamma_ln(-1.0), DomainError);
}

TEST_CASE("gamma_fn on the negative axis") {
  CHECK(gamma_fn(-0.5) == doctest::Approx(-2.0 * std::sqrt(pi)).epsilon(1e-13));
  CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-13));
  CHECK_THROWS(gamma_fn(-2.0));
}

TEST_CASE("j_lambda special values") {
  for (double lam : {-0.5, 0.0, 0.5, 1.7, 4.0}) CHECK(bessel_j_normalized(lam, 0.0) == 1.0);
  CHECK(std::abs(bessel_j_normalized(0.5, pi)) < 1e-14);
  CHECK(std::abs(bessel_j_normalized(0.0, 2.404825557695773)) < 1e-13);
  // The series loses ~e^t ulp to cancellation just below the switch point.
  for (double t : {0.3, 2.0, 11.0, 25.0, 80.0}) {
    CHECK(std::abs(bessel_j_normalized(0.5, t) - std::sin(t) / t) < 1e-13);
    CHECK(std::abs(bessel_j_normalized(-0.5, t) - std::cos(t)) < 1e-11);
  }
  CHECK_THROWS_AS(bessel_j_normalized(-0.75, 1.0), DomainError);
}

TEST_CASE("j_lambda against the standard library") {
  for (double lam : {0.0, 0.25, 1.0, 2.0, 3.5, 6.0}) {
    for (double t = 0.05; t < 60.0; t *= 1.37) {
      CHECK(std::abs(bessel_j_normalized(lam, t) - j_oracle(lam, t)) < 1e-11);
    }
  }
}

TEST_CASE("j_lambda series and asymptotic branches overlap") {
  for (double lam : {-0.5, 0.0, 0.5, 1.0, 2.0, 4.0, 6.0}) {
    const double ts = bessel_switch_point(lam);
    for (double dt = -2.0; dt <= 2.0; dt += 0.25) {
      const double t = ts + dt;
      CHECK(std::abs(bessel_j_series(lam, t) - bessel_j_asymptotic(lam, t)) < 1e-10);
    }
  }
}

TEST_CASE("|j_lambda| <= 1") {
  for (double lam : {-0.5, 0.0, 0.3, 1.0, 2.5, 6.0}) {
    for (double t = 0.0; t < 200.0; t += 0.37) CHECK(std::abs(bessel_j_normalized(lam, t)) <= 1.0 + 1e-14);
  }
}

TEST_CASE("i_lambda") {
  for (double lam : {0.0, 1.0, 2.5}) CHECK(bessel_i_normalized(lam, 0.0) == 1.0);
  const double c1 = 2.0 / pi;  // c_lambda at lambda = 1
  const double quad = c1 * simpson([](double p) { return std::exp(2.0 * std::cos(p)) * std::sin(p) * std::sin(p); });
  CHECK(bessel_i_normalized(1.0, 2.0) == doctest::Approx(quad).epsilon(1e-11));
  CHECK(bessel_i_normalized(0.7, 1.0) < bessel_i_normalized(0.7, 2.0));
  for (double lam : {0.0, 0.5, 1.3, 4.0}) {
    for (double t : {0.1, 1.0, 7.0, 30.0, 300.0}) {
      CHECK(bessel_i_normalized(lam, t) == doctest::Approx(i_oracle(lam, t)).epsilon(1e-11));
      CHECK(bessel_i_scaled(lam, t) == doctest::Approx(i_oracle(lam, t) * std::exp(-t)).epsilon(1e-11));
    }
  }
  CHECK(std::isfinite(bessel_i_scaled(1.0, 1e5)));
}

TEST_CASE("hyp2f1 at one") {
  CHECK(hyp2f1_at_one(0.3, 0.0, 2.0) == doctest::Approx(1.0));
  CHECK(hyp2f1_at_one(0.5, 0.5, 2.0) == doctest::Approx(4.0 / pi).epsilon(1e-14));
  // Series oracle; terms decay like m^{-(c-a-b)-1}.
  auto series = [](double a, double b, double c) {
    double term = 1.0, sum = 1.0;
    for (int m = 0; m < 200000; ++m) {
      term *= (a + m) * (b + m) / ((m + 1.0) * (c + m));
      sum += term;
    }
    return sum;
  };
  CHECK(hyp2f1_at_one(0.5, 0.5, 4.0) == doctest::Approx(series(0.5, 0.5, 4.0)).epsilon(1e-12));
  CHECK(hyp2f1_at_one(0.25, 0.75, 3.5) == doctest::Approx(series(0.25, 0.75, 3.5)).epsilon(1e-12));
  CHECK(hyp2f1_at_one(-0.3, 1.2, 3.9) == doctest::Approx(series(-0.3, 1.2, 3.9)).epsilon(1e-12));
  CHECK_THROWS_AS(hyp2f1_at_one(0.5, 0.5, 1.0), DivergenceError);
  CHECK_THROWS_AS(hyp2f1_at_one(-3.5, 0.5, -2.0), PoleError);
}

TEST_CASE("incomplete beta") {
  CHECK(beta_inc_regularized(1.0, 1.0, 0.3) == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(beta_inc_regularized(2.5, 1.0, 0.4) == doctest::Approx(std::pow(0.4, 2.5)).epsilon(1e-13));
  for (double x : {0.01, 0.2, 0.5, 0.9}) {
    CHECK(beta_inc_regularized(1.5, 3.2, x) + beta_inc_regularized(3.2, 1.5, 1.0 - x) == doctest::Approx(1.0).epsilon(1e-13));
  }
  CHECK(beta_inc_regularized(1.5, 1.5, 0.5) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("angular rule") {
  for (double lam : {0.0, 0.5, 1.0, 2.0, 3.7}) {
    const auto rule = make_angular_rule(lam, 12);
    double mass = 0.0;
    for (std::size_t i = 0; i < rule.weights.size(); ++i) {
      CHECK(rule.weights[i] > 0.0);
      if (i) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
      mass += rule.weights[i];
    }
    CHECK(rule.nodes.front() > -1.0);
    CHECK(rule.nodes.back() < 1.0);
    const double exact = std::sqrt(pi) * std::exp(std::lgamma(lam + 0.5) - std::lgamma(lam + 1.0));
    CHECK(mass == doctest::Approx(exact).epsilon(1e-12));
    CHECK(angular_mass(lam) == doctest::Approx(exact).epsilon(1e-13));
    CHECK(std::abs(rule.apply([](double u) { return u; })) < 1e-14);
  }
  CHECK(make_angular_rule(1.0, 8).apply([](double) { return 1.0; }) == doctest::Approx(pi / 2).epsilon(1e-13));
  CHECK(make_angular_rule(1.0, 3).apply([](double u) { return u * u; }) == doctest::Approx(pi / 8).epsilon(1e-13));
  CHECK_THROWS_AS(make_angular_rule(1.0, 0), DomainError);
  CHECK_THROWS_AS(make_angular_rule(-0.5, 4), DomainError);
}

TEST_CASE("angular rule: doubling the order leaves smooth integrals unchanged") {
  for (double lam : {0.0, 0.5, 2.0}) {
    auto f = [](double u) { return std::exp(1.3 * u) / (2.0 - u); };
    const double a = make_angular_rule(lam, 32).apply(f);
    const double b = make_angular_rule(lam, 64).apply(f);
    CHECK(std::abs(a - b) < 1e-12 * std::abs(b));
  }
}

TEST_CASE("gauss-jacobi moments") {
  // int (1-u)^a (1+u)^b u^2 du from the Beta function, against the rule.
  for (auto [a, b] : {std::pair{0.0, 0.0}, {0.5, -0.5}, {-0.25, 1.5}, {2.0, 0.3}}) {
    for (std::size_t n : {5u, 40u, 256u}) {
      const auto rule = gauss_jacobi(n, a, b);
      const double mass = std::exp((a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                                   std::lgamma(a + b + 2.0));
      CHECK(rule.apply([](double) { return 1.0; }) == doctest::Approx(mass).epsilon(1e-13));
      // E[u] under the normalized weight is (b - a)/(a + b + 2).
      CHECK(rule.apply([](double u) { return u; }) / mass == doctest::Approx((b - a) / (a + b + 2.0)).epsilon(1e-12));
    }
  }
  CHECK(gauss_legendre(10).apply([](double u) { return u * u * u * u; }) == doctest::Approx(0.4).epsilon(1e-14));
}
