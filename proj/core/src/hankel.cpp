#include "dunkl/hankel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dunkl/error.hpp"
#include "dunkl/parallel.hpp"
#include "dunkl/specfun.hpp"

namespace dunkl {

namespace {

// Last radius where f is not negligible.
double support_end(const RadialFunction& f) {
  const double mx = f.max_abs();
  const auto& g = f.grid();
  for (std::size_t i = g.size(); i-- > 0;) {
    if (std::abs(f[i]) > 1e-17 * mx) return std::min(g.rmax(), g.r(std::min(i + 3, g.size() - 1)));
  }
  return 0.0;
}

double hankel_at(const RadialFunction& f, double rho, const DunklParams& params, const HankelOptions& opt,
                 const QuadratureRule& panel, double t_end, bool& extrapolated) {
  const auto& g = f.grid();
  const double lam = params.lambda_k;
  const double d = params.d_k;
  if (rho == 0.0) return integrate_nu_lambda(f, params);

  const double h = g.h();
  const double uc = std::log(2.0 * std::numbers::pi / (rho * h * opt.points_per_period));
  const double cut = 6.0 * opt.window;  // erfc(6) ~ 2e-17
  auto window = [&](double u) { return 0.5 * std::erfc((u - uc) / opt.window); };

  // Region A: trapezoid in u; head [0, rmin] with f and j frozen.
  double a_sum = 0.0;
  const auto& w = g.nu_weights();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double u = g.u(i);
    if (u > uc + cut) break;
    if (f[i] == 0.0) continue;
    a_sum += w[i] * f[i] * bessel_j_normalized(lam, rho * g.r(i)) * std::exp(d * u) * window(u);
  }
  const double r0 = g.rmin();
  a_sum += f.at(r0) * std::pow(r0, d) / d * window(g.u_min());

  // Region B: t from the window's lower edge to the end of the support.
  const double tb0 = std::max(std::exp(uc - cut), r0);
  double b_sum = 0.0;
  if (t_end > tb0) {
    auto integrand = [&](double t) {
      const double fv = f.at_smooth(t);
      if (fv == 0.0) return 0.0;
      const double u = std::log(t);
      return fv * bessel_j_normalized(lam, rho * t) * std::pow(t, d - 1.0) * (1.0 - window(u));
    };
    auto integrate = [&](double a, double b) {
      const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
      double s = 0.0;
      for (std::size_t q = 0; q < panel.nodes.size(); ++q) s += panel.weights[q] * integrand(mid + half * panel.nodes[q]);
      return half * s;
    };
    const double shift = 0.75 + 0.5 * lam;
    const double period = std::numbers::pi / rho;
    double k = std::ceil(tb0 / period - shift);
    double t = tb0;
    std::vector<double> partial;
    partial.reserve(opt.max_panels + 1);
    while (true) {
      const double tn = std::min((k + shift) * period, t_end);
      if (tn > t) b_sum += integrate(t, tn);
      t = tn;
      k += 1.0;
      partial.push_back(b_sum);
      if (t >= t_end) break;
      if (partial.size() > opt.max_panels) {
        // Repeated averaging of the trailing partial sums.
        const std::size_t m = std::min(opt.averaging_levels + 1, partial.size());
        std::vector<double> s(partial.end() - static_cast<long>(m), partial.end());
        for (std::size_t lev = 1; lev < m; ++lev) {
          for (std::size_t j = 0; j + lev < m; ++j) s[j] = 0.5 * (s[j] + s[j + 1]);
        }
        b_sum = s[0];
        extrapolated = true;
        break;
      }
    }
  }
  return params.b_lambda * (a_sum + b_sum);
}

}  // namespace

HankelValues hankel_values(const RadialFunction& f, const std::vector<double>& rho, const DunklParams& params,
                           const HankelOptions& opt) {
  for (double x : rho) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("hankel_transform: output nodes must be finite and >= 0");
  }
  if (opt.panel_order == 0 || opt.points_per_period <= 0.0 || opt.window <= 0.0) {
    throw ConfigError("hankel_transform: invalid options");
  }
  const auto panel = gauss_legendre(opt.panel_order);
  const double t_end = support_end(f);
  HankelValues out;
  out.values.assign(rho.size(), 0.0);
  std::vector<char> extrap(rho.size(), 0);
  parallel_for(rho.size(), [&](std::size_t i) {
    bool e = false;
    out.values[i] = hankel_at(f, rho[i], params, opt, panel, t_end, e);
    extrap[i] = e ? 1 : 0;
  });
  out.warnings = f.warnings();
  if (std::any_of(extrap.begin(), extrap.end(), [](char c) { return c != 0; })) {
    out.warnings.push_back("hankel: oscillatory tail extrapolated by repeated averaging beyond " +
                           std::to_string(opt.max_panels) + " panels");
  }
  return out;
}

RadialFunction hankel_transform(const RadialFunction& f, const GridPtr& out_grid, const DunklParams& params,
                                const HankelOptions& opt) {
  auto hv = hankel_values(f, out_grid->nodes(), params, opt);
  RadialFunction out(out_grid, std::move(hv.values));
  for (auto& w : hv.warnings) out.add_warning(std::move(w));
  return out;
}

}  // namespace dunkl
