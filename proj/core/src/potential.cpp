#include "dunkl/potential.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "dunkl/error.hpp"
#include "dunkl/parallel.hpp"
#include "dunkl/specfun.hpp"
#include "dunkl/translate.hpp"

namespace dunkl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_alpha(double alpha, const DunklParams& p) {
  if (!(alpha > 0.0) || !(alpha < p.d_k)) throw DomainError("alpha must lie in (0, d_k)");
}

}  // namespace

RieszKernelSpec make_riesz_spec(const DunklParams& params, double alpha) {
  check_alpha(alpha, params);
  return {alpha, params, riesz_gamma(params, alpha)};
}

// ---------------------------------------------------------------------------
// psi

double psi_series(double rho, double alpha, const DunklParams& params) {
  if (!(rho >= 0.0) || !(rho < 1.0)) throw DomainError("psi: rho must lie in [0, 1)");
  check_alpha(alpha, params);
  const double kappa = 0.5 * (params.d_k - alpha);
  const double lam = params.lambda_k;
  const double x = rho * rho;
  double term = angular_mass(lam);
  double sum = term;
  for (int m = 0; m < 10000000; ++m) {
    const double md = m;
    term *= (kappa + 2.0 * md) * (kappa + 2.0 * md + 1.0) * (md + 0.5) * x /
            ((2.0 * md + 1.0) * (2.0 * md + 2.0) * (lam + 1.0 + md));
    sum += term;
    if (term < 1e-17 * sum && md > kappa) return sum;
  }
  throw DivergenceError(DivergenceError::Where::series, "psi_series: no convergence (rho too close to 1)");
}

namespace {

// Split quadrature in u = cos phi for psi(rho), rho = 1 - gap.
double psi_split(double rho, double gap, double kappa, double e) {
  static thread_local double cached_e = std::numeric_limits<double>::quiet_NaN();
  static thread_local QuadratureRule gj_left, gj_first;
  static const QuadratureRule gl = gauss_legendre(16);
  if (!(cached_e == e)) {
    gj_left = gauss_jacobi(40, 0.0, e);
    gj_first = gauss_jacobi(16, 0.0, e);
    cached_e = e;
  }
  // [-1, 0] with u = (x - 1)/2; weight (1 + x)^e carried by the rule.
  double left = 0.0;
  for (std::size_t k = 0; k < gj_left.nodes.size(); ++k) {
    const double u = 0.5 * (gj_left.nodes[k] - 1.0);
    left += gj_left.weights[k] * std::pow(1.0 - rho * u, -kappa) * std::pow(1.0 - u, e);
  }
  left *= std::pow(0.5, e + 1.0);

  // [0, 1] in v = 1 - u: (gap + rho v)^{-kappa} v^e (2 - v)^e. First panel [0, eps]
  // carries v^e in the rule, then doubling panels.
  const double eps = rho > 0.0 ? std::min(1.0, gap / rho) : 1.0;
  double first = 0.0;
  for (std::size_t k = 0; k < gj_first.nodes.size(); ++k) {
    const double v = 0.5 * eps * (1.0 + gj_first.nodes[k]);
    first += gj_first.weights[k] * std::pow(gap + rho * v, -kappa) * std::pow(2.0 - v, e);
  }
  double right = first * std::pow(0.5 * eps, e + 1.0);
  for (double a = eps; a < 1.0;) {
    const double b = std::min(1.0, 2.0 * a);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
      const double v = mid + half * gl.nodes[k];
      s += gl.weights[k] * std::pow(gap + rho * v, -kappa) * std::pow(v * (2.0 - v), e);
    }
    right += half * s;
    a = b;
  }
  return left + right;
}

}  // namespace

double psi_gap(double gap, double alpha, const DunklParams& params) {
  if (!(gap > 0.0) || !(gap <= 1.0)) throw DomainError("psi: gap 1 - rho must lie in (0, 1]");
  check_alpha(alpha, params);
  const double rho = 1.0 - gap;
  if (rho <= 0.9) return psi_series(rho, alpha, params);
  return psi_split(rho, gap, 0.5 * (params.d_k - alpha), params.lambda_k - 0.5);
}

double psi_quadrature(double rho, double alpha, const DunklParams& params) {
  if (!(rho >= 0.0) || !(rho < 1.0)) throw DomainError("psi: rho must lie in [0, 1)");
  check_alpha(alpha, params);
  return psi_split(rho, 1.0 - rho, 0.5 * (params.d_k - alpha), params.lambda_k - 0.5);
}

double psi(double rho, double alpha, const DunklParams& params) {
  if (!(rho >= 0.0) || !(rho < 1.0)) throw DomainError("psi: rho must lie in [0, 1)");
  if (rho <= 0.9) return psi_series(rho, alpha, params);
  return psi_gap(1.0 - rho, alpha, params);
}

double psi_at_one(double alpha, const DunklParams& params) {
  check_alpha(alpha, params);
  if (alpha <= 1.0) return kInf;
  const double kappa = 0.5 * (params.d_k - alpha);
  return angular_mass(params.lambda_k) * hyp2f1_at_one(0.5 * kappa, 0.5 * kappa + 0.5, params.lambda_k + 1.0);
}

double phi0(double r, double t, const RieszKernelSpec& spec) {
  if (!(r >= 0.0) || !(t >= 0.0)) throw DomainError("phi0: radii must be >= 0");
  if (r == 0.0 && t == 0.0) throw DomainError("phi0: undefined at (0, 0)");
  const auto& p = spec.params;
  const double a = spec.alpha;
  if (r == 0.0 || t == 0.0) return std::pow(std::max(r, t), a - p.d_k) / spec.gamma_alpha;
  const double kappa = 0.5 * (p.d_k - a);
  const double s2 = r * r + t * t;
  const double gap = (r - t) * (r - t) / s2;
  const double ps = gap == 0.0 ? psi_at_one(a, p) : psi_gap(gap, a, p);
  if (std::isinf(ps)) return kInf;
  return p.c_lambda * std::pow(s2, -kappa) * ps / spec.gamma_alpha;
}

// ---------------------------------------------------------------------------
// Riesz potential

double phi0_weighted(double sigma, double mu, const RieszKernelSpec& spec) {
  const auto& p = spec.params;
  const double kappa = 0.5 * (p.d_k - spec.alpha);
  const double as = std::abs(sigma);
  // 1 - sech(sigma) = 2 sinh^2(sigma/2) / cosh(sigma)
  double gap;
  if (as > 40.0) {
    gap = 1.0 - 2.0 * std::exp(-as);
  } else {
    const double sh = std::sinh(0.5 * sigma);
    gap = 2.0 * sh * sh / std::cosh(sigma);
  }
  double ps;
  if (gap == 0.0) {
    ps = psi_at_one(spec.alpha, p);
  } else if (gap >= 1.0) {
    ps = angular_mass(p.lambda_k);
  } else {
    ps = psi_gap(gap, spec.alpha, p);
  }
  if (std::isinf(ps)) return kInf;
  // (1 + e^{2 sigma})^{-kappa} e^{mu sigma}
  const double logpre = sigma > 0.0 ? (mu - 2.0 * kappa) * sigma - kappa * std::log1p(std::exp(-2.0 * sigma))
                                    : mu * sigma - kappa * std::log1p(std::exp(2.0 * sigma));
  return p.c_lambda * ps * std::exp(logpre) / spec.gamma_alpha;
}

namespace {

double riesz_kernel(double sigma, const RieszKernelSpec& spec) {
  return phi0_weighted(sigma, spec.params.d_k, spec);
}

// Lagrange basis on local nodes -2..3, evaluated at x in [0, 1].
void lagrange_basis6(double x, double* L) {
  for (int j = 0; j < 6; ++j) {
    double l = 1.0;
    for (int m = 0; m < 6; ++m) {
      if (m != j) l *= (x - (m - 2)) / static_cast<double>(j - m);
    }
    L[j] = l;
  }
}

struct RieszWeights {
  long m_lo = 0;             // index of W.front()
  std::vector<double> W;     // moment weights per offset m
  std::vector<double> below; // below[m - m_lo] = sum_{m' < m} W_m' + tail
};

RieszWeights riesz_weights(const RadialGrid& grid, const RieszKernelSpec& spec, const RieszOptions& opt) {
  const long n = static_cast<long>(grid.size());
  const double h = grid.h();
  const long j_lo = -(n - 1) - 3 - 20;
  const long j_hi = n + 1;
  RieszWeights rw;
  rw.m_lo = j_lo - 2;
  const long m_hi = j_hi + 3;
  rw.W.assign(static_cast<std::size_t>(m_hi - rw.m_lo + 1), 0.0);

  const auto gl = gauss_legendre(opt.cell_order);
  const double a = spec.alpha;
  // Innermost panel next to the singularity: weight s^{alpha-1} when alpha < 1.
  const auto inner = a < 1.0 ? gauss_jacobi(opt.cell_order, 0.0, a - 1.0) : gl;

  std::vector<double> cell_m(static_cast<std::size_t>(j_hi - j_lo + 1) * 6, 0.0);
  parallel_for(static_cast<std::size_t>(j_hi - j_lo + 1), [&](std::size_t idx) {
    const long j = j_lo + static_cast<long>(idx);
    double M[6] = {0, 0, 0, 0, 0, 0};
    double L[6];
    auto add_panel = [&](double x0, double x1) {  // x = local coordinate in [0, 1]
      const double mid = 0.5 * (x0 + x1), half = 0.5 * (x1 - x0);
      for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
        const double x = mid + half * gl.nodes[q];
        const double kv = riesz_kernel((static_cast<double>(j) + x) * h, spec) * gl.weights[q] * half * h;
        lagrange_basis6(x, L);
        for (int p = 0; p < 6; ++p) M[p] += kv * L[p];
      }
    };
    if (j != 0 && j != -1) {
      add_panel(0.0, 1.0);
    } else {
      // Singularity at x = 0 (j = 0) or x = 1 (j = -1); s = distance to it.
      auto xof = [j](double s) { return j == 0 ? s : 1.0 - s; };
      double s1 = 1.0;
      for (std::size_t l = 0; l < opt.grading_levels; ++l) {
        const double s0 = 0.5 * s1;
        add_panel(std::min(xof(s0), xof(s1)), std::max(xof(s0), xof(s1)));
        s1 = s0;
      }
      // [0, s1] in s with the singular weight carried by the rule (x = s1 (1 + y)/2).
      for (std::size_t q = 0; q < inner.nodes.size(); ++q) {
        const double s = 0.5 * s1 * (1.0 + inner.nodes[q]);
        const double x = xof(s);
        double kv = riesz_kernel((static_cast<double>(j) + x) * h, spec);
        double jac = 0.5 * s1;
        if (a < 1.0) {
          // rule weight (1 + y)^{a-1} = (2 s / s1)^{a-1}; divide it out of k.
          kv *= std::pow(s * h, 1.0 - a);
          jac = std::pow(0.5 * s1, a) * std::pow(h, a - 1.0);
        }
        const double w = inner.weights[q] * kv * jac * h;
        lagrange_basis6(x, L);
        for (int p = 0; p < 6; ++p) M[p] += w * L[p];
      }
    }
    for (int p = 0; p < 6; ++p) cell_m[idx * 6 + static_cast<std::size_t>(p)] = M[p];
  });
  for (long j = j_lo; j <= j_hi; ++j) {
    const auto idx = static_cast<std::size_t>(j - j_lo);
    for (long p = 0; p < 6; ++p) rw.W[static_cast<std::size_t>(j - 2 + p - rw.m_lo)] += cell_m[idx * 6 + static_cast<std::size_t>(p)];
  }
  // Constant extension below the lowest cell: k ~ C e^{d sigma}.
  const double s_lo = static_cast<double>(j_lo) * h;
  double acc = riesz_kernel(s_lo, spec) / spec.params.d_k;
  rw.below.assign(rw.W.size(), 0.0);
  for (std::size_t i = 0; i < rw.W.size(); ++i) {
    rw.below[i] = acc;
    acc += rw.W[i];
  }
  return rw;
}

// The interpolant of the samples smears each jump of a tagged profile over
// the cells whose stencils straddle it. Returns, per node, the integral of
// (tag - interpolant) against the kernel over those cells.
std::vector<double> riesz_jump_correction(const RadialFunction& f, const RieszKernelSpec& spec,
                                          const RieszOptions& opt) {
  const auto& g = f.grid();
  const long n = static_cast<long>(g.size());
  std::vector<double> corr(g.size(), 0.0);
  if (!f.tagged()) return corr;
  const double h = g.h(), u0 = g.u_min(), a = spec.alpha;
  const auto& tag = f.tag();

  struct Piece {
    double lo, hi;
    long cell;
  };
  std::vector<Piece> pieces;
  for (double uj : tag_breaks(tag)) {
    const long cj = static_cast<long>(std::floor((uj - u0) / h));
    if (cj - 6 < 0 || cj + 6 > n - 2) continue;
    for (long c = cj - 5; c <= cj + 5; ++c) {
      const double lo = u0 + static_cast<double>(c) * h, hi = lo + h;
      if (uj > lo && uj < hi) {
        pieces.push_back({lo, uj, c});
        pieces.push_back({uj, hi, c});
      } else {
        pieces.push_back({lo, hi, c});
      }
    }
  }
  if (pieces.empty()) return corr;
  std::sort(pieces.begin(), pieces.end(), [](const Piece& x, const Piece& y) { return x.lo < y.lo; });
  pieces.erase(std::unique(pieces.begin(), pieces.end(),
                           [](const Piece& x, const Piece& y) { return x.lo == y.lo && x.hi == y.hi; }),
               pieces.end());

  auto err = [&](const Piece& pc, double u) {
    double L[6];
    lagrange_basis6((u - (u0 + static_cast<double>(pc.cell) * h)) / h, L);
    double p = 0.0;
    for (int k = 0; k < 6; ++k) p += L[k] * f[static_cast<std::size_t>(pc.cell - 2 + k)];
    return tag_value(tag, std::exp(u)) - p;
  };
  const auto gl16 = gauss_legendre(16), gl6 = gauss_legendre(6);
  const auto inner = a < 1.0 ? gauss_jacobi(16, 0.0, a - 1.0) : gl16;

  parallel_for(g.size(), [&](std::size_t iu) {
    const double ui = g.u(iu);
    double acc = 0.0;
    auto plain = [&](const Piece& pc, double x0, double x1, const QuadratureRule& q) {
      const double mid = 0.5 * (x0 + x1), half = 0.5 * (x1 - x0);
      for (std::size_t k = 0; k < q.nodes.size(); ++k) {
        const double u = mid + half * q.nodes[k];
        acc += q.weights[k] * half * err(pc, u) * riesz_kernel(u - ui, spec);
      }
    };
    // [x0, x1] with the kernel singularity at one endpoint; the kernel argument
    // is formed from the distance s so it stays exact near sigma = 0.
    auto graded = [&](const Piece& pc, double x0, double x1, bool at_lo) {
      const double sing = at_lo ? x0 : x1, dir = at_lo ? 1.0 : -1.0, off = sing - ui;
      auto add = [&](double s, double w) { acc += w * err(pc, sing + dir * s) * riesz_kernel(off + dir * s, spec); };
      double s1 = x1 - x0;
      for (std::size_t l = 0; l < opt.grading_levels; ++l) {
        const double s0 = 0.5 * s1, mid = 0.75 * s1, half = 0.25 * s1;
        for (std::size_t k = 0; k < gl16.nodes.size(); ++k) add(mid + half * gl16.nodes[k], gl16.weights[k] * half);
        s1 = s0;
      }
      for (std::size_t k = 0; k < inner.nodes.size(); ++k) {
        const double s = 0.5 * s1 * (1.0 + inner.nodes[k]);
        add(s, a < 1.0 ? inner.weights[k] * std::pow(s, 1.0 - a) * std::pow(0.5 * s1, a) : inner.weights[k] * 0.5 * s1);
      }
    };
    for (const auto& pc : pieces) {
      if (ui > pc.lo && ui < pc.hi) {
        graded(pc, pc.lo, ui, false);
        graded(pc, ui, pc.hi, true);
      } else if (ui == pc.lo || ui == pc.hi) {
        graded(pc, pc.lo, pc.hi, ui == pc.lo);
      } else {
        // Halve toward u_i until each panel is no wider than its distance to it.
        const bool below = ui < pc.lo;
        double x0 = pc.lo, x1 = pc.hi;
        while (true) {
          const double dist = below ? x0 - ui : ui - x1;
          if (dist >= x1 - x0) {
            plain(pc, x0, x1, dist < 8.0 * h ? gl16 : gl6);
            break;
          }
          const double m = 0.5 * (x0 + x1);
          if (below) {
            plain(pc, m, x1, gl16);
            x1 = m;
          } else {
            plain(pc, x0, m, gl16);
            x0 = m;
          }
        }
      }
    }
    corr[iu] = acc;
  });
  return corr;
}

}  // namespace

RadialFunction riesz_apply(const RadialFunction& f, const RieszKernelSpec& spec, const RieszOptions& opt) {
  check_alpha(spec.alpha, spec.params);
  const auto& g = f.grid();
  const auto rw = riesz_weights(g, spec, opt);
  const long n = static_cast<long>(g.size());
  std::vector<double> out(g.size());
  const double b = spec.params.b_lambda;
  const double f0 = f[0];
  const auto jump = riesz_jump_correction(f, spec, opt);
  parallel_for(g.size(), [&](std::size_t iu) {
    const long i = static_cast<long>(iu);
    double s = jump[iu];
    for (long m = -i; m <= n - 1 - i; ++m) {
      const double fv = f[static_cast<std::size_t>(i + m)];
      if (fv != 0.0) s += rw.W[static_cast<std::size_t>(m - rw.m_lo)] * fv;
    }
    // Node -1 and below carry f(rmin): constant extension toward the origin.
    s += f0 * rw.below[static_cast<std::size_t>(-i - rw.m_lo)];
    out[iu] = b * std::exp(spec.alpha * g.u(iu)) * s;
  });
  RadialFunction res(f.grid_ptr(), std::move(out));
  for (const auto& w : f.warnings()) res.add_warning(w);
  const double mx = f.max_abs();
  if (mx > 0.0 && std::abs(f[g.size() - 1]) * std::pow(g.rmax(), spec.alpha) > 1e-12 * mx) {
    res.add_warning("riesz: f does not decay fast enough at rmax; integral truncated at the grid edge");
  }
  return res;
}

double riesz_at_origin(const RadialFunction& f, const RieszKernelSpec& spec) {
  check_alpha(spec.alpha, spec.params);
  const double a = spec.alpha;
  const double body = integrate_u(f, [a](double u) { return std::exp(a * u); });
  const double r0 = f.grid().rmin();
  const double head = f.at(r0) * std::pow(r0, a) / a;
  return spec.params.b_lambda * (body + head) / spec.gamma_alpha;
}

// ---------------------------------------------------------------------------
// Maximal function

namespace {

// Radius beyond which f is negligible (+inf if it never decays on the grid).
double support_radius(const RadialFunction& f) {
  const auto& g = f.grid();
  const double mx = f.max_abs();
  for (std::size_t i = g.size(); i-- > 0;) {
    if (std::abs(f[i]) > 1e-17 * mx) {
      if (i + 3 >= g.size()) return std::numeric_limits<double>::infinity();
      return g.r(i + 3);
    }
  }
  return g.rmin();
}

}  // namespace

std::vector<double> default_ball_radii(const RadialFunction& f, std::size_t per_decade) {
  if (per_decade == 0) throw ConfigError("ball radii: per_decade must be positive");
  const auto& g = f.grid();
  const double top = g.rmax();
  const double l0 = std::log10(g.rmin()), l1 = std::log10(top);
  const auto n = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((l1 - l0) * static_cast<double>(per_decade))));
  std::vector<double> R(n + 1);
  for (std::size_t k = 0; k <= n; ++k) R[k] = std::pow(10.0, l0 + (l1 - l0) * static_cast<double>(k) / static_cast<double>(n));
  R.back() = top;  // also the R = infinity surrogate
  return R;
}

namespace {

double translate_value(const RadialFunction& f, double t, double r, const DunklParams& p) {
  if (const auto* gt = std::get_if<GaussianTag>(&f.tag())) {
    return gt->amp * std::exp(-gt->a * (r - t) * (r - t)) * bessel_i_scaled(p.lambda_k, 2.0 * gt->a * r * t);
  }
  return gegenbauer_translate_at(f, t, r, p);
}

struct MaximalPoint {
  double value = 0.0, normalized = 0.0, argmax = 0.0;
};

// sup over R of R^{alpha-d} |C(R)|, C(R) = int_0^R G^t f(r) dnu_lambda(t).
// G^t f(r) vanishes unless |r - t| <= W (support radius of f), and is smooth
// between the kinks |rho - r|, rho + r of each jump rho of f. The t-mesh is f's
// log grid, refined to a uniform step h W around t = r when r > W, split at the
// kinks and at every ball radius so that C(R) is read off at mesh points.
MaximalPoint maximal_at(const RadialFunction& f, double r, double alpha, const DunklParams& p,
                        const std::vector<double>& Rs, double W, const std::vector<double>& jumps,
                        const QuadratureRule& gl) {
  const auto& g = f.grid();
  const double d = p.d_k, b = p.b_lambda, h = g.h();
  const double lo = r > W ? r - W : 0.0;
  const double hi = std::min(Rs.back(), r + W);
  std::vector<double> pts;
  auto add = [&](double t) {
    if (t > lo && t < hi) pts.push_back(t);
  };
  for (std::size_t j = 0; j < g.size(); ++j) add(g.r(j));
  if (r > W && hi > lo) {
    const double step = h * W;
    const auto m = static_cast<std::size_t>(std::ceil((hi - lo) / step));
    for (std::size_t k = 1; k < m; ++k) add(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(m));
  }
  for (double rho : jumps) {
    add(std::abs(rho - r));
    add(rho + r);
  }
  for (double R : Rs) add(R);
  if (lo > 0.0) pts.push_back(lo);
  pts.push_back(hi);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  MaximalPoint out;
  out.argmax = Rs.front();
  std::size_t best = 0;
  auto consider = [&](double R, double C) {
    const double v = std::pow(R, alpha - d) * std::abs(C);
    if (v > out.value) {
      out.value = v;
      out.argmax = R;
      return true;
    }
    return false;
  };
  auto normalized = [&](double R, double C) { out.normalized = std::max(out.normalized, std::abs(C) / (b * std::pow(R, d) / d)); };
  // b int_a^c G^t f(r) t^{d-1} dt on a piece of one mesh interval.
  auto piece = [&](double a0, double a1) {
    const double mid = 0.5 * (a0 + a1), half = 0.5 * (a1 - a0);
    double s = 0.0;
    for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
      const double t = mid + half * gl.nodes[q];
      s += gl.weights[q] * translate_value(f, t, r, p) * std::pow(t, d - 1.0);
    }
    return b * half * s;
  };
  // [0, t0]: G^t f(r) frozen at t0 when the mesh starts at 0, zero otherwise.
  const double t0 = pts.front();
  const double head = lo == 0.0 ? translate_value(f, t0, r, p) * b : 0.0;
  auto head_C = [&](double R) { return head * std::pow(R, d) / d; };

  std::vector<double> Cs(Rs.size());
  auto take = [&](std::size_t k, double C) {
    Cs[k] = C;
    if (consider(Rs[k], C)) best = k;
    normalized(Rs[k], C);
  };
  std::size_t k = 0;
  double C = head_C(t0);
  for (; k < Rs.size() && Rs[k] <= t0; ++k) take(k, head_C(Rs[k]));
  for (std::size_t i = 1; i < pts.size(); ++i) {
    C += piece(pts[i - 1], pts[i]);
    for (; k < Rs.size() && Rs[k] <= pts[i]; ++k) take(k, C);
  }
  for (; k < Rs.size(); ++k) take(k, C);

  // C(R) from a known C(a), a <= R.
  auto advance = [&](double a, double Ca, double R) {
    if (R <= t0) return head_C(R);
    if (a < t0) {
      a = t0;
      Ca = head_C(t0);
    }
    for (auto it = std::upper_bound(pts.begin(), pts.end(), a); it != pts.end() && *it < R; ++it) {
      Ca += piece(a, *it);
      a = *it;
    }
    if (R <= pts.back()) Ca += piece(a, R);
    return Ca;
  };

  // Zoom in on (R_{best-1}, R_{best+1}): the sampled maximum of a peaked
  // R -> R^{alpha-d} C(R) lags the true supremum by O(step^2).
  if (Rs.size() > 1 && out.value > 0.0) {
    constexpr int kSub = 16, kLevels = 4;
    double ra = Rs[best > 0 ? best - 1 : 0], Ca = Cs[best > 0 ? best - 1 : 0];
    double rb = Rs[std::min(best + 1, Rs.size() - 1)];
    for (int level = 0; level < kLevels && rb > ra * (1.0 + 1e-9); ++level) {
      std::array<double, kSub + 1> R{}, Cv{};
      R[0] = ra;
      Cv[0] = Ca;
      int jbest = 0;
      double vbest = -1.0;
      for (int j = 0; j <= kSub; ++j) {
        if (j > 0) {
          R[j] = ra * std::pow(rb / ra, static_cast<double>(j) / kSub);
          Cv[j] = advance(R[j - 1], Cv[j - 1], R[j]);
          consider(R[j], Cv[j]);
          normalized(R[j], Cv[j]);
        }
        const double v = std::pow(R[j], alpha - d) * std::abs(Cv[j]);
        if (v > vbest) {
          vbest = v;
          jbest = j;
        }
      }
      const int j0 = std::max(jbest - 1, 0), j1 = std::min(jbest + 1, kSub);
      ra = R[j0];
      Ca = Cv[j0];
      rb = R[j1];
    }
  }
  return out;
}

}  // namespace

MaximalResult maximal_apply(const RadialFunction& f, double alpha, const DunklParams& params,
                            const std::vector<double>& R_grid) {
  if (R_grid.empty()) throw ConfigError("maximal_apply: empty R_grid");
  if (!(alpha >= 0.0) || !(alpha < params.d_k)) throw DomainError("maximal_apply: alpha must lie in [0, d_k)");
  for (double R : R_grid) {
    if (!(R > 0.0) || !std::isfinite(R)) throw ConfigError("maximal_apply: ball radii must be positive and finite");
  }
  std::vector<double> Rs(R_grid);
  std::sort(Rs.begin(), Rs.end());
  const auto& g = f.grid();
  const double W = support_radius(f);
  std::vector<double> jumps;
  for (double u : tag_breaks(f.tag())) jumps.push_back(std::exp(u));
  const auto gl = gauss_legendre(3);

  std::vector<double> out(g.size()), norm(g.size()), arg(g.size());
  parallel_for(g.size(), [&](std::size_t i) {
    const auto m = maximal_at(f, g.r(i), alpha, params, Rs, W, jumps, gl);
    out[i] = m.value;
    norm[i] = m.normalized;
    arg[i] = m.argmax;
  });
  const auto m0 = maximal_at(f, 0.0, alpha, params, Rs, W, jumps, gl);
  MaximalResult res{RadialFunction(f.grid_ptr(), std::move(out)), {}, std::move(arg), m0.value, 0.0};
  if (alpha == 0.0) {
    res.normalized = std::move(norm);
    res.normalized_at_origin = m0.normalized;
  }
  for (const auto& w : f.warnings()) res.value.add_warning(w);
  return res;
}

// ---------------------------------------------------------------------------
// Hardy / Bellman

RadialFunction hardy_apply(const RadialFunction& f, const DunklParams& params) {
  auto c = cumulative_nu_lambda(f, params);
  return RadialFunction(f.grid_ptr(), std::move(c));
}

RadialFunction bellman_apply(const RadialFunction& f, const DunklParams& params) {
  auto c = cumulative_nu_lambda(f, params);
  const double total = c.back();
  for (double& v : c) v = total - v;
  RadialFunction out(f.grid_ptr(), std::move(c));
  const auto& g = f.grid();
  const double mx = f.max_abs();
  if (mx > 0.0 && std::abs(f[g.size() - 1]) * std::pow(g.rmax(), params.d_k) > 1e-12 * mx) {
    out.add_warning("bellman: f has not decayed at rmax; mass beyond the grid is dropped");
  }
  return out;
}

}  // namespace dunkl
