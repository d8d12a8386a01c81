#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "dunkl/error.hpp"
#include "dunkl/verify.hpp"

using namespace dunkl;

namespace {

constexpr double kE = std::numbers::e;

InequalityParams tuple(double alpha, double beta, double gamma, double p, double q, double lam) {
  return {alpha, beta, gamma, p, q, params_from_lambda(lam)};
}

// Least-squares slope of ln y against ln x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double a = std::log(x[i]), b = std::log(y[i]);
    sx += a;
    sy += b;
    sxx += a * a;
    sxy += a * b;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST_CASE("Mellin extremizer ratio for a log indicator") {
  const auto g = RadialGrid::default_grid();
  const auto chi = RadialFunction::from_tag(g, LogIndicatorTag{1.0, kE, 1.0, 0.0});
  for (double L : {0.5, 1.0, 2.5, 5.0, 6.0}) {
    const auto e = mellin_extremizer_ratio(chi, 2.0, L);
    CHECK(e.ratio == doctest::Approx(1.0 - 1.0 / (4.0 * L)).epsilon(1e-8));
    CHECK(e.sharp == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(e.gap == doctest::Approx((e.sharp - e.ratio) / e.sharp));
  }
  CHECK(mellin_extremizer_ratio(chi, 2.0, 5.0).ratio == doctest::Approx(0.95).epsilon(1e-8));
  const auto zero = RadialFunction(g, std::vector<double>(g->size(), 0.0));
  CHECK(mellin_extremizer_ratio(zero, 2.0, 3.0).ratio == 0.0);
  auto neg = chi.samples();
  neg[10] = -1.0;
  CHECK_THROWS_AS(mellin_extremizer_ratio(RadialFunction(g, neg), 2.0, 1.0), DomainError);
  CHECK_THROWS_AS(mellin_extremizer_ratio(chi, 1.0, 1.0), DomainError);
}

TEST_CASE("Mellin ratio never exceeds the L1 norm") {
  const auto g = RadialGrid::default_grid();
  const std::vector<RadialFunction> gs{
      RadialFunction::from_tag(g, LogIndicatorTag{0.3, 4.0, 2.0, 0.0}),
      RadialFunction::from_tag(g, LogIndicatorTag{1.0, std::numeric_limits<double>::infinity(), 1.0, -0.7}),
      RadialFunction::from_function(g, [](double r) { return std::exp(-std::pow(std::log(r) - 1.0, 2)); }),
  };
  for (const auto& f : gs) {
    for (double p : {1.5, 2.0, 5.0}) {
      for (double L : {0.1, 1.0, 10.0, 100.0}) {
        const auto e = mellin_extremizer_ratio(f, p, L);
        CHECK(e.ratio <= e.sharp * (1.0 + 1e-12));
      }
    }
  }
}

TEST_CASE("Hardy norm estimate") {
  const auto p0 = params_from_lambda(0.0);
  const double c = 1.0;  // a/p' - b/p at (a, b, p) = (2, 0, 2)
  const auto e20 = hardy_norm_estimate(2.0, 0.0, 2.0, p0, 20.0 / c);
  CHECK(e20.sharp == doctest::Approx(1.0));
  CHECK(e20.ratio >= 0.95 * e20.sharp);
  std::vector<double> Ls, gaps;
  double prev = 0.0;
  for (double k : {10.0, 20.0, 40.0, 80.0}) {
    const auto e = hardy_norm_estimate(2.0, 0.0, 2.0, p0, k / c);
    CHECK(e.ratio <= e.sharp * (1.0 + 1e-3));
    CHECK(e.ratio > prev);
    prev = e.ratio;
    Ls.push_back(k / c);
    gaps.push_back(e.gap);
  }
  const double slope = -loglog_slope(Ls, gaps);
  CHECK(slope >= 0.8);
  CHECK(slope <= 1.2);
  CHECK_THROWS_AS(hardy_norm_estimate(1.0, 0.0, 2.0, p0, 10.0), InadmissibleError);
}

TEST_CASE("Bellman norm estimate") {
  for (double lam : {0.0, 0.5, 2.0}) {
    const auto p = params_from_lambda(lam);
    const double a = 0.2, b = p.d_k - a, pe = 1.7;
    const double c = b / pe - a / conjugate_exponent(pe);
    std::vector<double> Ls, gaps;
    for (double k : {10.0, 20.0, 40.0, 80.0}) {
      const auto e = bellman_norm_estimate(a, b, pe, p, k / c);
      CHECK(e.sharp == doctest::Approx(bellman_sharp(a, b, pe, p)));
      CHECK(e.ratio <= e.sharp * (1.0 + 1e-3));
      Ls.push_back(k / c);
      gaps.push_back(e.gap);
    }
    const double slope = -loglog_slope(Ls, gaps);
    CHECK(slope >= 0.8);
    CHECK(slope <= 1.2);
  }
}

TEST_CASE("Stein-Weiss ratio of a Gaussian") {
  const auto g = RadialGrid::default_grid();
  const auto ip = tuple(1.0, 0.0, 1.0, 2.0, 2.0, 0.5);
  const auto spec = make_riesz_spec(ip.params, 1.0);
  const auto e = stein_weiss_ratio(RadialFunction::from_tag(g, GaussianTag{0.5, 1.0}), ip, spec);
  CHECK(e.sharp == doctest::Approx(2.0));
  CHECK(e.ratio > 0.0);
  CHECK(e.ratio <= 2.0 * (1.0 + 1e-3));
  const auto e3 = stein_weiss_ratio(RadialFunction::from_tag(g, GaussianTag{4.5, 1.0}), ip, spec);
  CHECK(e3.ratio == doctest::Approx(e.ratio).epsilon(1e-6));
  CHECK_THROWS_AS(stein_weiss_ratio(RadialFunction(g, std::vector<double>(g->size(), 0.0)), ip, spec), DomainError);
}

TEST_CASE("Stein-Weiss ratio stays below the sharp constant") {
  const auto g = RadialGrid::default_grid();
  for (const auto& ip : {tuple(1.0, 0.0, 1.0, 2.0, 2.0, 0.5), tuple(1.5, 0.5, 1.0, 1.5, 1.5, 1.0),
                         tuple(0.6, 0.1, 0.5, 3.0, 3.0, 0.0)}) {
    const auto spec = make_riesz_spec(ip.params, ip.alpha);
    for (const auto& f : {RadialFunction::from_tag(g, GaussianTag{0.5, 1.0}),
                          RadialFunction::from_tag(g, IndicatorTag{1.0, 1.0}),
                          stein_weiss_family(g, ip, 3.0)}) {
      const auto e = stein_weiss_ratio(f, ip, spec);
      CHECK(e.ratio <= e.sharp * (1.0 + 1e-3));
    }
  }
}

TEST_CASE("extremizing family approaches the sharp constant") {
  const auto g = RadialGrid::log_spaced(1e-30, 1e30, 16384);
  const auto ip = tuple(1.0, 0.0, 1.0, 2.0, 2.0, 0.5);
  const auto spec = make_riesz_spec(ip.params, 1.0);
  double prev = 1.0;
  for (double L : {2.0, 8.0, 32.0}) {
    const auto e = stein_weiss_ratio(stein_weiss_family(g, ip, L), ip, spec);
    CHECK(e.L == doctest::Approx(L));
    CHECK(e.gap > 0.0);
    CHECK(e.gap < prev);
    prev = e.gap;
  }
}

TEST_CASE("weak-type scan") {
  const auto g = RadialGrid::default_grid();
  const auto ip = tuple(2.0, 0.0, 0.0, 1.0, 3.0, 0.5);
  const auto spec = make_riesz_spec(ip.params, 2.0);
  const auto chi = RadialFunction::from_tag(g, IndicatorTag{1.0, 1.0});
  const auto w = weak_type_scan(chi, ip, spec);
  REQUIRE(w.lambdas.size() == 64);
  CHECK(std::isfinite(w.value));
  CHECK(w.value > 0.0);
  for (std::size_t k = 1; k < w.lambdas.size(); ++k) CHECK(w.measures[k] <= w.measures[k - 1]);

  auto doubled = w.lambdas;
  for (double& l : doubled) l *= 2.0;
  CHECK(weak_type_scan(chi.scaled(2.0), ip, spec, doubled).value == doctest::Approx(w.value).epsilon(1e-12));
  CHECK(weak_type_scan(chi.scaled(2.0), ip, spec).value == doctest::Approx(w.value).epsilon(1e-12));

  const auto gf = RadialGrid::log_spaced(RadialGrid::kDefaultRmin, RadialGrid::kDefaultRmax, 2 * RadialGrid::kDefaultSize);
  const auto wf = weak_type_scan(RadialFunction::from_tag(gf, IndicatorTag{1.0, 1.0}), ip, spec);
  CHECK(wf.value == doctest::Approx(w.value).epsilon(0.05));

  CHECK_THROWS_AS(weak_type_scan(chi, tuple(1.0, 0.0, 1.0, 2.0, 2.0, 0.5), make_riesz_spec(ip.params, 1.0)),
                  InadmissibleError);
}

TEST_CASE("json lines and sweep csv") {
  NormEstimate e;
  e.ratio = 0.5;
  e.L = 3.0;
  e.sharp = 1.0;
  e.gap = 0.5;
  e.warnings = {"w"};
  const auto j = nlohmann::json::parse(to_json_line(e));
  CHECK(j["ratio"] == 0.5);
  CHECK(j["warnings"][0] == "w");
  CHECK(to_json_line(e).find('\n') == std::string::npos);

  std::ostringstream os;
  write_sweep_csv(os, {{tuple(1.0, 0.0, 1.0, 2.0, 2.0, 0.5), e}});
  const auto s = os.str();
  CHECK(s.rfind("alpha,beta,gamma,p,q,lambda_k,d_k,ratio,sharp,gap,L,grid_size\n", 0) == 0);
  CHECK(s.find("\n1,0,1,2,2,0.5,3,0.5,1,0.5,3,0\n") != std::string::npos);
}
