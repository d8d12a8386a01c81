#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "dunkl/error.hpp"
#include "dunkl/params.hpp"
#include "dunkl/radial.hpp"

using namespace dunkl;
using std::numbers::pi;

namespace {

constexpr double kE = std::numbers::e;

RadialFunction log_gaussian(const GridPtr& g) {
  return RadialFunction::from_function(g, [](double r) { return std::exp(-std::log(r) * std::log(r)); });
}

}  // namespace

TEST_CASE("grid nodes and dnu weights") {
  const auto g = RadialGrid::log_spaced(1e-3, 1e4, 1000);
  CHECK(g->rmin() == doctest::Approx(1e-3));
  CHECK(g->rmax() == doctest::Approx(1e4));
  for (std::size_t i = 1; i < g->size(); ++i) CHECK(g->r(i) > g->r(i - 1));
  double s = 0.0;
  for (double w : g->nu_weights()) s += w;
  CHECK(s == doctest::Approx(std::log(1e7)).epsilon(1e-10));
  CHECK_THROWS_AS(RadialGrid::log_spaced(0.0, 1.0, 10), ConfigError);
  CHECK_THROWS_AS(RadialGrid::log_spaced(2.0, 1.0, 10), ConfigError);
}

TEST_CASE("samples must be finite and match their tag") {
  const auto g = RadialGrid::log_spaced(0.1, 10.0, 64);
  std::vector<double> v(64, 1.0);
  v[5] = std::nan("");
  CHECK_THROWS_AS(RadialFunction(g, v), DataError);
  auto gauss = RadialFunction::from_tag(g, GaussianTag{0.5, 1.0}).samples();
  gauss[3] += 1e-9;
  CHECK_THROWS_AS(RadialFunction(g, gauss, GaussianTag{0.5, 1.0}), DataError);
}

TEST_CASE("integrate_nu") {
  const auto g = RadialGrid::default_grid();
  CHECK(integrate_nu(RadialFunction::from_tag(g, LogIndicatorTag{1.0, kE, 1.0, 0.0})) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(integrate_nu(RadialFunction::from_tag(g, LogIndicatorTag{2.0, 2.0 * kE, 1.0, 0.0})) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(integrate_nu(log_gaussian(g)) == doctest::Approx(std::sqrt(pi)).epsilon(1e-12));

  // Untagged indicator sampled off-lattice: cell fractions keep the error at O(h^2).
  const auto chi = RadialFunction::from_function(g, [](double r) { return r >= 1.0 && r <= kE ? 1.0 : 0.0; });
  CHECK(integrate_nu(chi) == doctest::Approx(1.0).epsilon(2e-2));
}

TEST_CASE("integrate_nu_lambda") {
  const auto g = RadialGrid::default_grid();
  for (double lam : {0.0, 0.5, 1.0, 3.0}) {
    const auto p = params_from_lambda(lam);
    CHECK(integrate_nu_lambda(RadialFunction::from_tag(g, GaussianTag{0.5, 1.0}), p) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
  const auto p = params_from_lambda(0.5);
  CHECK(integrate_nu_lambda(RadialFunction::from_tag(g, IndicatorTag{1.0, 1.0}), p) ==
        doctest::Approx(p.b_lambda / 3.0).epsilon(1e-12));
  CHECK(integrate_nu_lambda(RadialFunction(g, std::vector<double>(g->size(), 0.0)), p) == 0.0);
}

TEST_CASE("refinement leaves integrals unchanged") {
  const auto p = params_from_lambda(0.5);
  const auto g1 = RadialGrid::default_grid();
  const auto g2 = RadialGrid::log_spaced(RadialGrid::kDefaultRmin, RadialGrid::kDefaultRmax, 2 * RadialGrid::kDefaultSize);
  CHECK(std::abs(integrate_nu(log_gaussian(g1)) - integrate_nu(log_gaussian(g2))) < 1e-8);
  auto ind = [](const GridPtr& g) { return RadialFunction::from_tag(g, LogIndicatorTag{1.0, kE, 1.0, 0.0}); };
  CHECK(std::abs(integrate_nu(ind(g1)) - integrate_nu(ind(g2))) < 1e-8);
  auto gau = [](const GridPtr& g) { return RadialFunction::from_tag(g, GaussianTag{0.5, 1.0}); };
  CHECK(std::abs(integrate_nu_lambda(gau(g1), p) - integrate_nu_lambda(gau(g2), p)) < 1e-8);
  CHECK(std::abs(weighted_lp_norm(gau(g1), 2.0, 0.0, p).value - weighted_lp_norm(gau(g2), 2.0, 0.0, p).value) < 1e-8);
}

TEST_CASE("weighted_lp_norm") {
  const auto g = RadialGrid::default_grid();
  const auto p0 = params_from_lambda(0.0);
  const auto f = RadialFunction::from_tag(g, GaussianTag{0.5, 1.0});
  const auto n = weighted_lp_norm(f, 2.0, 0.0, p0);
  CHECK(n.value == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK_FALSE(n.truncated);
  CHECK(weighted_lp_norm(f.scaled(-3.0), 2.0, 0.0, p0).value == doctest::Approx(3.0 * n.value).epsilon(1e-14));
  CHECK(weighted_lp_norm(RadialFunction(g, std::vector<double>(g->size(), 0.0)), 1.5, 0.3, p0).value == 0.0);

  // r^w shifts the Gamma integral: int e^{-r^2} r^{2w+1} dr = Gamma(w+1)/2.
  for (double w : {-0.5, 0.5, 2.0}) {
    CHECK(weighted_lp_norm(f, 2.0, w, p0).value == doctest::Approx(std::sqrt(std::tgamma(w + 1.0) / 2.0)).epsilon(1e-10));
  }
  const auto slow = RadialFunction::from_tag(g, PowerTag{-0.1, 1.0});
  CHECK(weighted_lp_norm(slow, 2.0, 0.0, p0).truncated);
  CHECK_THROWS_AS(weighted_lp_norm(f, 0.5, 0.0, p0), DomainError);
}

TEST_CASE("mellin convolution of two log indicators") {
  const auto g = RadialGrid::lattice(1.0 / 256.0, 1e-3, 1e3);
  const auto chi = RadialFunction::from_tag(g, LogIndicatorTag{1.0, kE, 1.0, 0.0});
  const auto c = mellin_convolve(chi, chi);
  double peak = 0.0;
  for (std::size_t i = 0; i < g->size(); ++i) {
    const double u = std::log(g->r(i));
    const double expect = std::max(0.0, std::min(u, 2.0 - u));
    CHECK(std::abs(c[i] - expect) < 1e-10);
    peak = std::max(peak, c[i]);
    if (u < -1e-9 || u > 2.0 + 1e-9) CHECK(c[i] == doctest::Approx(0.0));
  }
  CHECK(peak == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("mellin convolution against a direct double loop") {
  const auto g = RadialGrid::log_spaced(1e-4, 1e4, 2049);
  const auto f = log_gaussian(g);
  const auto k = RadialFunction::from_tag(g, LogIndicatorTag{1.0, kE, 1.0, 0.0});
  const auto c = mellin_convolve(f, k);
  // Oracle: 4000-point midpoint rule in ln t over [0, 1].
  for (std::size_t i = 0; i < g->size(); i += 97) {
    const double u = std::log(g->r(i));
    double s = 0.0;
    const int m = 4000;
    for (int j = 0; j < m; ++j) {
      const double v = (j + 0.5) / m;
      s += std::exp(-(u - v) * (u - v)) / m;
    }
    CHECK(std::abs(c[i] - s) < 1e-4);
  }
}

TEST_CASE("mellin convolution commutes") {
  const auto g = RadialGrid::lattice(1.0 / 128.0, 1e-3, 1e3);
  const auto f = log_gaussian(g);
  const auto k = RadialFunction::from_tag(g, LogIndicatorTag{1.0, kE, 1.0, 0.0});
  const auto a = mellin_convolve(f, k), b = mellin_convolve(k, f);
  for (std::size_t i = 0; i < g->size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-12);
}

TEST_CASE("narrow bump is an approximate identity") {
  const auto g = RadialGrid::lattice(1.0 / 512.0, 1e-3, 1e3);
  const auto f = log_gaussian(g);
  double prev = 1e300;
  for (double w : {0.2, 0.05, 0.0125}) {
    const auto bump = RadialFunction::from_tag(g, LogIndicatorTag{std::exp(-w), std::exp(w), 0.5 / w, 0.0});
    const auto c = mellin_convolve(f, bump);
    double err = 0.0;
    for (std::size_t i = 0; i < g->size(); ++i) err = std::max(err, std::abs(c[i] - f[i]));
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 1e-4);
}

TEST_CASE("Young bound") {
  const auto g = RadialGrid::lattice(1.0 / 128.0, 1e-4, 1e4);
  const auto k = RadialFunction::from_tag(g, LogIndicatorTag{0.5, 3.0, 1.0, 0.0});
  const auto bump = RadialFunction::from_function(g, [](double r) { return 1.0 / (1.0 + std::pow(std::log(r), 4)); });
  const auto osc = RadialFunction::from_function(g, [](double r) { return std::sin(3.0 * std::log(r)) * std::exp(-std::abs(std::log(r))); });
  for (const auto* f : {&bump, &osc}) {
    for (double p : {1.0, 1.5, 2.0, 4.0}) {
      CHECK(lp_norm_nu(mellin_convolve(*f, k), p).value <= integrate_nu(k) * lp_norm_nu(*f, p).value * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("incompatible grids") {
  const auto a = RadialGrid::log_spaced(1e-2, 1e2, 100);
  const auto b = RadialGrid::log_spaced(1e-2, 1e2, 150);
  CHECK_THROWS_AS(mellin_convolve(RadialFunction::from_tag(a, GaussianTag{}), RadialFunction::from_tag(b, GaussianTag{})),
                  ConfigError);
}

TEST_CASE("off-node evaluation") {
  const auto g = RadialGrid::log_spaced(0.01, 100.0, 801);
  const auto f = RadialFunction::from_function(g, [](double r) { return std::exp(-r); });
  CHECK(f.at(1e-3) == 0.0);
  CHECK(f.at(1e3) == 0.0);
  for (double r : {0.0123, 0.5, 1.7, 33.3}) {
    CHECK(f.at(r) == doctest::Approx(std::exp(-r)).epsilon(1e-4));
    CHECK(f.at_smooth(r) == doctest::Approx(std::exp(-r)).epsilon(1e-9));
  }
}

TEST_CASE("csv round trip") {
  const auto g = RadialGrid::log_spaced(1e-3, 1e3, 300);
  const auto f = RadialFunction::from_tag(g, GaussianTag{0.7, 2.0});
  std::stringstream ss;
  write_csv(ss, f);
  const auto back = function_from_table(read_csv(ss));
  REQUIRE(back.size() == f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    CHECK(back.grid().r(i) == g->r(i));
    CHECK(back[i] == f[i]);
  }
  std::stringstream bad("x,y\n1,2\n");
  CHECK_THROWS_AS(read_csv(bad), DataError);
}
