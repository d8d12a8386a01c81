#include "dunkl/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include <json.hpp>

#include "dunkl/error.hpp"

namespace dunkl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// (2L)^{-1} int g(e^u) (2L - |u|)^+ du and ||g||_1; p plays no role in the value.
NormEstimate mellin_form(const RadialFunction& g, double L) {
  if (!(L > 0.0) || !std::isfinite(L)) throw DomainError("mellin_extremizer_ratio: L must be positive");
  for (double v : g.samples()) {
    if (v < 0.0) throw DomainError("mellin_extremizer_ratio: g must be nonnegative");
  }
  const auto& grid = g.grid();
  NormEstimate e;
  e.L = L;
  const double twoL = 2.0 * L;
  e.ratio = integrate_u(g, [twoL](double u) { return std::max(0.0, twoL - std::abs(u)); }, {-twoL, 0.0, twoL}) / twoL;
  e.sharp = integrate_nu(g);
  e.gap = e.sharp > 0.0 ? (e.sharp - e.ratio) / e.sharp : 0.0;
  e.u_min = grid.u_min();
  e.u_max = grid.u_max();
  e.grid_size = grid.size();
  e.quadrature_order = g.tagged() ? 8 : 2;
  e.tolerance = g.tagged() ? 1e-10 : 1e-3;
  const double mx = g.max_abs();
  if ((grid.u_min() > -twoL && g[0] > 1e-12 * mx) || (grid.u_max() < twoL && g[grid.size() - 1] > 1e-12 * mx)) {
    e.warnings.push_back("mellin: grid span does not cover [-2L, 2L] where g is non-negligible");
  }
  e.warnings.insert(e.warnings.end(), g.warnings().begin(), g.warnings().end());
  return e;
}

// Span in u for the reduced Hardy/Bellman kernels; exp overflows past ~709.
constexpr double kMaxSpan = 700.0;

}  // namespace

NormEstimate mellin_extremizer_ratio(const RadialFunction& g, double p, double L) {
  if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("mellin_extremizer_ratio: p must lie in (1, inf)");
  return mellin_form(g, L);
}

NormEstimate hardy_norm_estimate(double a, double b, double p, const DunklParams& params, double L) {
  const double sharp = hardy_sharp(a, b, p, params);
  const double c = params.b_lambda / sharp;  // a/p' - b/p
  const double top = std::min(2.0 * L + 1.0, kMaxSpan);
  const auto grid = RadialGrid::log_spaced(std::exp(-1.0), std::exp(top), 4096);
  const auto g0 = RadialFunction::from_tag(grid, LogIndicatorTag{1.0, kInf, 1.0, -c});
  auto e = mellin_form(g0, L);
  e.ratio *= params.b_lambda;
  e.sharp = sharp;
  e.gap = (sharp - e.ratio) / sharp;
  return e;
}

NormEstimate bellman_norm_estimate(double a, double b, double p, const DunklParams& params, double L) {
  const double sharp = bellman_sharp(a, b, p, params);
  const double c = params.b_lambda / sharp;  // b/p - a/p'
  const double bottom = std::min(2.0 * L + 1.0, kMaxSpan);
  const auto grid = RadialGrid::log_spaced(std::exp(-bottom), std::exp(1.0), 4096);
  const auto g0 = RadialFunction::from_tag(grid, LogIndicatorTag{0.0, 1.0, 1.0, c});
  auto e = mellin_form(g0, L);
  e.ratio *= params.b_lambda;
  e.sharp = sharp;
  e.gap = (sharp - e.ratio) / sharp;
  return e;
}

RadialFunction stein_weiss_family(const GridPtr& grid, const InequalityParams& ip, double L) {
  if (!(L > 0.0)) throw DomainError("stein_weiss_family: L must be positive");
  const double d = ip.params.d_k;
  return RadialFunction::from_tag(
      grid, LogIndicatorTag{std::exp(-L), std::exp(L), std::pow(2.0 * L, -1.0 / ip.p), -ip.beta - d / ip.p});
}

NormEstimate stein_weiss_ratio(const RadialFunction& f, const InequalityParams& ip, const RieszKernelSpec& spec) {
  const double sharp = stein_weiss_sharp(ip).value;
  const auto den = weighted_lp_norm(f, ip.p, ip.beta, ip.params);
  if (!(den.value > 0.0)) throw DomainError("stein_weiss_ratio: || r^beta f ||_p is zero");
  const auto If = riesz_apply(f, spec);
  const auto num = weighted_lp_norm(If, ip.p, -ip.gamma, ip.params);
  NormEstimate e;
  e.ratio = num.value / den.value;
  e.sharp = sharp;
  e.gap = (sharp - e.ratio) / sharp;
  const auto& g = f.grid();
  e.u_min = g.u_min();
  e.u_max = g.u_max();
  e.grid_size = g.size();
  e.quadrature_order = 6;
  e.tolerance = 1e-6;
  if (const auto* t = std::get_if<LogIndicatorTag>(&f.tag())) e.L = 0.5 * std::log(t->hi / t->lo);
  if (num.truncated) e.warnings.push_back("numerator: " + num.warning);
  if (den.truncated) e.warnings.push_back("denominator: " + den.warning);
  return e;
}

std::vector<double> default_lambda_grid(const std::vector<double>& profile, std::size_t n, double decades) {
  std::vector<double> pos;
  for (double v : profile) {
    if (v > 0.0 && std::isfinite(v)) pos.push_back(v);
  }
  if (pos.empty() || n < 2) throw ConfigError("lambda grid: profile has no positive values");
  auto mid = pos.begin() + static_cast<long>(pos.size() / 2);
  std::nth_element(pos.begin(), mid, pos.end());
  const double lm = std::log10(*mid);
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = std::pow(10.0, lm - 0.5 * decades + decades * static_cast<double>(k) / static_cast<double>(n - 1));
  }
  return out;
}

WeakTypeResult weak_type_scan(const RadialFunction& f, const InequalityParams& ip, const RieszKernelSpec& spec,
                              const std::vector<double>& lambda_grid) {
  const auto cls = classify_tuple(ip);
  if (cls.kind != Classification::Kind::weak) {
    const Condition c = cls.reason.value_or(Condition::p_range);
    throw InadmissibleError(c, std::string("weak_type_scan: tuple is not of weak type (") + condition_name(c) + ")");
  }
  if (std::abs(spec.alpha - ip.alpha) > 1e-12 * ip.alpha) {
    throw ConfigError("weak_type_scan: kernel spec does not match alpha");
  }
  for (double v : f.samples()) {
    if (v < 0.0) throw DomainError("weak_type_scan: f must be nonnegative");
  }
  const double den = weighted_lp_norm(f, 1.0, ip.beta, ip.params).value;
  if (!(den > 0.0)) throw DomainError("weak_type_scan: || r^beta f ||_1 is zero");

  const auto If = riesz_apply(f, spec);
  const auto& g = f.grid();
  const std::size_t n = g.size();
  std::vector<double> P(n);
  for (std::size_t i = 0; i < n; ++i) P[i] = std::pow(g.r(i), -ip.gamma) * std::abs(If[i]);

  WeakTypeResult res;
  res.lambdas = lambda_grid.empty() ? default_lambda_grid(P) : lambda_grid;
  const double d = ip.params.d_k, b = ip.params.b_lambda, h = g.h();
  bool open_top = false;
  for (double lam : res.lambdas) {
    if (!(lam > 0.0)) throw ConfigError("weak_type_scan: lambda grid must be positive");
    // Superlevel set as a union of intervals; crossings by linear interpolation in ln r.
    double m = 0.0;
    double start = P[0] > lam ? 0.0 : -1.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const bool in0 = P[i] > lam, in1 = P[i + 1] > lam;
      if (in0 == in1) continue;
      const double x = (P[i] - lam) / (P[i] - P[i + 1]);
      const double rc = std::exp(g.u(i) + x * h);
      if (in1) {
        start = rc;
      } else {
        m += b * (std::pow(rc, d) - std::pow(start, d)) / d;
        start = -1.0;
      }
    }
    if (start >= 0.0) {
      m += b * (std::pow(g.rmax(), d) - std::pow(start, d)) / d;
      open_top = true;
    }
    res.measures.push_back(m);
    const double v = std::pow(lam, ip.q) * m / std::pow(den, ip.q);
    if (v > res.value) {
      res.value = v;
      res.lambda_at_sup = lam;
    }
  }
  if (open_top) res.warnings.push_back("weak_type_scan: a superlevel set reaches rmax; its measure is truncated");
  res.warnings.insert(res.warnings.end(), If.warnings().begin(), If.warnings().end());
  return res;
}

std::string to_json_line(const NormEstimate& e) {
  nlohmann::ordered_json j;
  j["ratio"] = e.ratio;
  j["L"] = e.L;
  j["sharp"] = e.sharp;
  j["gap"] = e.gap;
  j["u_min"] = e.u_min;
  j["u_max"] = e.u_max;
  j["grid_size"] = e.grid_size;
  j["quadrature_order"] = e.quadrature_order;
  j["tolerance"] = e.tolerance;
  j["warnings"] = e.warnings;
  return j.dump();
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "alpha,beta,gamma,p,q,lambda_k,d_k,ratio,sharp,gap,L,grid_size\n";
  const auto old = os.precision(17);
  for (const auto& r : rows) {
    os << r.ip.alpha << ',' << r.ip.beta << ',' << r.ip.gamma << ',' << r.ip.p << ',' << r.ip.q << ','
       << r.ip.params.lambda_k << ',' << r.ip.params.d_k << ',' << r.est.ratio << ',' << r.est.sharp << ','
       << r.est.gap << ',' << r.est.L << ',' << r.est.grid_size << '\n';
  }
  os.precision(old);
}

}  // namespace dunkl
