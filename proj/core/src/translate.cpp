#include "dunkl/translate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "dunkl/error.hpp"
#include "dunkl/parallel.hpp"
#include "dunkl/specfun.hpp"

namespace dunkl {

namespace {

// Rules are cached per (lambda, n); QuadratureRule is immutable once built.
const QuadratureRule& angular_rule(double lambda, std::size_t n) {
  static std::mutex mu;
  static std::map<std::pair<double, std::size_t>, QuadratureRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(lambda, n);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, make_angular_rule(lambda, n)).first;
  return it->second;
}

// c_lambda-normalized measure of {phi : |r e - s e^{i phi}| <= R}.
double ball_fraction(double r, double s, double R, double lambda) {
  if (r == 0.0 || s == 0.0) {
    const double m = std::max(r, s);
    if (m < R) return 1.0;
    return m == R ? 0.5 : 0.0;
  }
  // x0 = (1 - cos phi0)/2 with cos phi0 = (r^2 + s^2 - R^2)/(2 r s).
  const double x0 = (R - (r - s)) * (R + (r - s)) / (4.0 * r * s);
  if (x0 <= 0.0) return 0.0;
  if (x0 >= 1.0) return 1.0;
  return beta_inc_regularized(lambda + 0.5, lambda + 0.5, x0);
}

}  // namespace

double gegenbauer_translate_at(const RadialFunction& f, double s, double r, const DunklParams& params,
                               const TranslateOptions& opt, bool* converged) {
  if (!(s >= 0.0) || !std::isfinite(s)) throw DomainError("gegenbauer_translate: s must be finite and >= 0");
  if (!(r >= 0.0)) throw DomainError("gegenbauer_translate: r must be >= 0");
  if (converged) *converged = true;
  const double lam = params.lambda_k;
  if (const auto* t = std::get_if<IndicatorTag>(&f.tag())) return t->amp * ball_fraction(r, s, t->R, lam);
  if (const auto* t = std::get_if<LogIndicatorTag>(&f.tag()); t && t->power == 0.0) {
    const double hi = std::isinf(t->hi) ? 1.0 : ball_fraction(r, s, t->hi, lam);
    const double lo = t->lo > 0.0 ? ball_fraction(r, s, t->lo, lam) : 0.0;
    return t->amp * (hi - lo);
  }
  if (s == 0.0) return f.at(r);
  if (r == 0.0) return f.at(s);
  const double c = params.c_lambda;
  auto eval = [&](std::size_t n) {
    const auto& rule = angular_rule(lam, n);
    double sum = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      const double arg2 = (r - s) * (r - s) + 2.0 * r * s * (1.0 - rule.nodes[k]);
      sum += rule.weights[k] * f.at(std::sqrt(arg2));
    }
    return c * sum;
  };
  const double scale = std::max(f.max_abs(), 1e-300);
  std::size_t n = opt.initial_order;
  double prev = eval(n);
  while (n < opt.max_order) {
    n *= 2;
    const double cur = eval(n);
    if (std::abs(cur - prev) < opt.tolerance * scale) return cur;
    prev = cur;
  }
  if (converged) *converged = false;
  return prev;
}

RadialFunction gegenbauer_translate(const RadialFunction& f, double s, const DunklParams& params,
                                    const TranslateOptions& opt) {
  if (!(s >= 0.0) || !std::isfinite(s)) throw DomainError("gegenbauer_translate: s must be finite and >= 0");
  const auto& g = f.grid();
  std::vector<double> out(g.size());
  std::vector<char> ok(g.size(), 1);
  parallel_for(g.size(), [&](std::size_t i) {
    bool conv = true;
    out[i] = gegenbauer_translate_at(f, s, g.r(i), params, opt, &conv);
    ok[i] = conv ? 1 : 0;
  });
  RadialFunction res(f.grid_ptr(), std::move(out));
  for (const auto& w : f.warnings()) res.add_warning(w);
  if (std::find(ok.begin(), ok.end(), 0) != ok.end()) {
    res.add_warning("translate: angular quadrature reached the order cap without meeting the tolerance");
  }
  return res;
}

RadialFunction translate_spectral(const RadialFunction& f, double s, const DunklParams& params,
                                  const HankelOptions& opt) {
  if (!(s >= 0.0) || !std::isfinite(s)) throw DomainError("translate_spectral: s must be finite and >= 0");
  auto hf = hankel_values(f, f.grid().nodes(), params, opt);
  auto& v = hf.values;
  const auto peak = static_cast<std::size_t>(
      std::max_element(v.begin(), v.end(), [](double a, double b) { return std::abs(a) < std::abs(b); }) - v.begin());
  const double mx = std::abs(v[peak]);
  for (std::size_t i = peak; i < v.size(); ++i) {
    if (std::abs(v[i]) < 1e-13 * mx) {
      std::fill(v.begin() + static_cast<long>(i), v.end(), 0.0);
      break;
    }
  }
  const auto& g = f.grid();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] *= bessel_j_normalized(params.lambda_k, s * g.r(i));
  RadialFunction mid(f.grid_ptr(), std::move(v));
  auto out = hankel_values(mid, g.nodes(), params, opt);
  RadialFunction res(f.grid_ptr(), std::move(out.values));
  for (const auto& w : hf.warnings) res.add_warning(w);
  return res;
}

}  // namespace dunkl
