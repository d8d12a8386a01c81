#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dunkl/error.hpp"
#include "dunkl/translate.hpp"

using namespace dunkl;
using std::numbers::pi;

namespace {

double i_oracle(double lam, double x) {
  if (x == 0.0) return 1.0;
  return std::exp(lam * std::log(2.0) + std::lgamma(lam + 1.0) - lam * std::log(x)) * std::cyl_bessel_i(lam, x);
}

// Direct midpoint rule in phi for the indicator of [0, R].
double indicator_oracle(double R, double s, double r, double lam) {
  const auto p = params_from_lambda(lam);
  const int n = 400000;
  double acc = 0.0;
  for (int k = 0; k < n; ++k) {
    const double ph = (k + 0.5) * pi / n;
    const double rho = std::sqrt(std::max(0.0, r * r + s * s - 2 * r * s * std::cos(ph)));
    if (rho <= R) acc += std::pow(std::sin(ph), 2 * lam);
  }
  return p.c_lambda * acc * pi / n;
}

}  // namespace

TEST_CASE("trivial translations") {
  const auto g = RadialGrid::log_spaced(1e-4, 1e3, 1024);
  const auto p = params_from_lambda(0.5);
  const auto f = RadialFunction::from_tag(g, GaussianTag{0.5, 1.0});
  const auto t0 = gegenbauer_translate(f, 0.0, p);
  for (std::size_t i = 0; i < g->size(); ++i) CHECK(t0[i] == doctest::Approx(f[i]).epsilon(1e-14));
  const auto one = RadialFunction::from_tag(g, PowerTag{0.0, 1.0});
  for (double lam : {0.0, 0.5, 3.0}) {
    const auto t1 = gegenbauer_translate(one, 1.7, params_from_lambda(lam));
    for (std::size_t i = 0; i < g->size(); i += 37) CHECK(t1[i] == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(gegenbauer_translate(f, -1.0, p), DomainError);
  CHECK_THROWS_AS(translate_spectral(f, -1.0, p), DomainError);
}

TEST_CASE("Gaussian closed form") {
  const auto g = RadialGrid::log_spaced(1e-4, 1e3, 1024);
  const auto f = RadialFunction::from_tag(g, GaussianTag{0.5, 1.0});
  for (double lam : {0.0, 0.5, 2.0}) {
    const auto p = params_from_lambda(lam);
    for (double s : {0.3, 1.0, 4.0}) {
      for (double r : {0.01, 0.5, 1.0, 2.2, 6.0}) {
        const double expect = std::exp(-(r * r + s * s) / 2) * i_oracle(lam, r * s);
        CHECK(std::abs(gegenbauer_translate_at(f, s, r, p) - expect) < 1e-12);
      }
    }
  }
  CHECK(gegenbauer_translate_at(f, 1.0, 1.0, params_from_lambda(0.5)) ==
        doctest::Approx(std::exp(-1.0) * std::sinh(1.0)).epsilon(1e-13));
}

TEST_CASE("indicator arc measure") {
  const auto g = RadialGrid::log_spaced(1e-3, 1e2, 512);
  const auto chi = RadialFunction::from_tag(g, IndicatorTag{1.0, 1.0});
  for (double lam : {0.0, 0.5, 1.5}) {
    const auto p = params_from_lambda(lam);
    for (auto [s, r] : {std::pair{0.5, 0.8}, {1.0, 1.0}, {1.2, 0.5}, {0.3, 0.2}, {2.0, 2.5}}) {
      CHECK(std::abs(gegenbauer_translate_at(chi, s, r, p) - indicator_oracle(1.0, s, r, lam)) < 1e-5);
    }
  }
}

TEST_CASE("symmetry in r and s") {
  const auto g = RadialGrid::log_spaced(1e-4, 1e3, 1024);
  const auto f = RadialFunction::from_function(g, [](double t) { return std::exp(-t * t / 2) * (1.0 + t * t); });
  const auto p = params_from_lambda(0.7);
  for (double r : {0.2, 0.9, 1.6, 3.1}) {
    for (double s : {0.1, 0.7, 2.4}) {
      CHECK(std::abs(gegenbauer_translate_at(f, s, r, p) - gegenbauer_translate_at(f, r, s, p)) < 1e-9);
    }
  }
}

TEST_CASE("positivity and mass preservation") {
  const auto g = RadialGrid::default_grid();
  const auto p = params_from_lambda(0.5);
  const auto f = RadialFunction::from_tag(g, GaussianTag{0.5, 1.0});
  const auto chi = RadialFunction::from_tag(g, IndicatorTag{1.0, 1.0});
  for (double s : {0.5, 2.0}) {
    const auto tf = gegenbauer_translate(f, s, p);
    const auto tc = gegenbauer_translate(chi, s, p);
    for (std::size_t i = 0; i < g->size(); ++i) {
      CHECK(tf[i] >= 0.0);
      CHECK(tc[i] >= 0.0);
    }
    CHECK(integrate_nu_lambda(tf, p) == doctest::Approx(integrate_nu_lambda(f, p)).epsilon(1e-7));
  }
}

TEST_CASE("spectral and geometric paths agree") {
  const auto g = RadialGrid::log_spaced(1e-5, 1e3, 2048);
  const auto f = RadialFunction::from_tag(g, GaussianTag{0.5, 1.0});
  const auto p = params_from_lambda(0.5);
  const auto geo = gegenbauer_translate(f, 1.0, p);
  const auto spec = translate_spectral(f, 1.0, p);
  double err = 0.0;
  for (std::size_t i = 0; i < g->size(); ++i) err = std::max(err, std::abs(geo[i] - spec[i]));
  CHECK(err < 1e-6);

  const auto s0 = translate_spectral(f, 0.0, p);
  for (std::size_t i = 0; i < g->size(); ++i) CHECK(std::abs(s0[i] - f[i]) < 1e-7);

  // r -> 0 gives f(s).
  const auto s2 = translate_spectral(f, 2.0, p);
  CHECK(std::abs(s2[0] - std::exp(-2.0)) < 1e-7);
}
