#include "dunkl/radial.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "dunkl/error.hpp"
#include "dunkl/specfun.hpp"

namespace dunkl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSnap = 1e-9;  // in units of h

const QuadratureRule& cell_rule() {
  static const QuadratureRule rule = gauss_legendre(8);
  return rule;
}

// Support of a jump tag in u, as [a, b] (possibly infinite).
bool tag_support(const AnalyticTag& tag, double& a, double& b) {
  if (const auto* t = std::get_if<IndicatorTag>(&tag)) {
    a = -kInf;
    b = std::log(t->R);
    return true;
  }
  if (const auto* t = std::get_if<LogIndicatorTag>(&tag)) {
    a = t->lo > 0.0 ? std::log(t->lo) : -kInf;
    b = std::isinf(t->hi) ? kInf : std::log(t->hi);
    return true;
  }
  return false;
}

void validate_tag(const AnalyticTag& tag) {
  if (const auto* t = std::get_if<GaussianTag>(&tag)) {
    if (!(t->a > 0.0) || !std::isfinite(t->amp)) throw DomainError("gaussian tag: need a > 0 and finite amplitude");
  } else if (const auto* t = std::get_if<IndicatorTag>(&tag)) {
    if (!(t->R > 0.0) || !std::isfinite(t->R)) throw DomainError("indicator tag: need 0 < R < inf");
  } else if (const auto* t = std::get_if<LogIndicatorTag>(&tag)) {
    if (!(t->lo >= 0.0) || !(t->hi > t->lo)) throw DomainError("log-indicator tag: need 0 <= lo < hi");
  } else if (const auto* t = std::get_if<PowerTag>(&tag)) {
    if (!std::isfinite(t->s)) throw DomainError("power tag: exponent must be finite");
  }
}

double lagrange6(const std::vector<double>& y, double x) {
  const auto n = static_cast<long>(y.size());
  if (n < 6) {
    const long i = std::clamp(static_cast<long>(std::floor(x)), 0L, n - 2);
    const double t = x - static_cast<double>(i);
    return (1.0 - t) * y[i] + t * y[i + 1];
  }
  long s = static_cast<long>(std::floor(x)) - 2;
  s = std::clamp(s, 0L, n - 6);
  double sum = 0.0;
  for (long j = 0; j < 6; ++j) {
    double l = 1.0;
    for (long m = 0; m < 6; ++m) {
      if (m != j) l *= (x - static_cast<double>(s + m)) / static_cast<double>(j - m);
    }
    sum += l * y[s + j];
  }
  return sum;
}

// Integral over the grid span of F(u, f(e^u)).
template <class Integrand>
double integrate_generic(const RadialFunction& f, Integrand&& F, const std::vector<double>& kinks) {
  const auto& g = f.grid();
  const std::size_t n = g.size();
  if (!f.tagged()) {
    const auto& w = g.nu_weights();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += w[i] * F(g.u(i), f[i]);
    return s;
  }
  std::vector<double> cuts = tag_breaks(f.tag());
  cuts.insert(cuts.end(), kinks.begin(), kinks.end());
  std::sort(cuts.begin(), cuts.end());
  double sa = -kInf, sb = kInf;
  const bool bounded = tag_support(f.tag(), sa, sb);
  const auto& rule = cell_rule();
  double total = 0.0;
  auto panel = [&](double a, double b) {
    if (!(b > a)) return;
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double u = mid + half * rule.nodes[q];
      s += rule.weights[q] * F(u, f.at(std::exp(u)));
    }
    total += half * s;
  };
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double a = g.u(i);
    const double b = g.u(i + 1);
    if (bounded && (b <= sa || a >= sb)) continue;
    auto it = std::upper_bound(cuts.begin(), cuts.end(), a);
    for (; it != cuts.end() && *it < b; ++it) {
      panel(a, *it);
      a = *it;
    }
    panel(a, b);
  }
  return total;
}

std::string fmt(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

// ---------------------------------------------------------------------------
// RadialGrid

RadialGrid::RadialGrid(double u0, double h, std::size_t n) : u0_(u0), h_(h), r_(n), w_nu_(n, h) {
  for (std::size_t i = 0; i < n; ++i) r_[i] = std::exp(u(i));
  w_nu_.front() *= 0.5;
  w_nu_.back() *= 0.5;
}

GridPtr RadialGrid::log_spaced(double rmin, double rmax, std::size_t n) {
  if (!(rmin > 0.0) || !(rmax > rmin) || !std::isfinite(rmax)) throw ConfigError("grid: need 0 < rmin < rmax < inf");
  if (n < 2) throw ConfigError("grid: need at least 2 nodes");
  const double u0 = std::log(rmin);
  const double h = (std::log(rmax) - u0) / static_cast<double>(n - 1);
  return GridPtr(new RadialGrid(u0, h, n));
}

GridPtr RadialGrid::lattice(double h, double rmin, double rmax) {
  if (!(h > 0.0)) throw ConfigError("grid: step must be positive");
  if (!(rmin > 0.0) || !(rmax > rmin) || !std::isfinite(rmax)) throw ConfigError("grid: need 0 < rmin < rmax < inf");
  const double klo = std::floor(std::log(rmin) / h + 1e-9);
  const double khi = std::ceil(std::log(rmax) / h - 1e-9);
  const auto n = static_cast<std::size_t>(khi - klo) + 1;
  if (n < 2) throw ConfigError("grid: need at least 2 nodes");
  return GridPtr(new RadialGrid(klo * h, h, n));
}

std::vector<double> RadialGrid::nu_lambda_weights(const DunklParams& params) const {
  std::vector<double> w(size());
  for (std::size_t i = 0; i < size(); ++i) w[i] = w_nu_[i] * params.b_lambda * std::exp(params.d_k * u(i));
  return w;
}

double RadialGrid::position(double r) const { return (std::log(r) - u0_) / h_; }

bool RadialGrid::same_step(const RadialGrid& other) const { return std::abs(h_ - other.h_) <= 1e-12 * h_; }

// ---------------------------------------------------------------------------
// Tags

double tag_value(const AnalyticTag& tag, double r) {
  return std::visit(
      [r](const auto& t) -> double {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          throw DomainError("tag_value: profile is untagged");
        } else if constexpr (std::is_same_v<T, GaussianTag>) {
          return t.amp * std::exp(-t.a * r * r);
        } else if constexpr (std::is_same_v<T, IndicatorTag>) {
          const double e = std::log(r / t.R);
          if (std::abs(e) < 1e-12) return 0.5 * t.amp;
          return e < 0.0 ? t.amp : 0.0;
        } else if constexpr (std::is_same_v<T, LogIndicatorTag>) {
          const double el = t.lo > 0.0 ? std::log(r / t.lo) : kInf;
          const double eh = std::isinf(t.hi) ? -kInf : std::log(r / t.hi);
          if (el < -1e-12 || eh > 1e-12) return 0.0;
          const double v = t.amp * (t.power == 0.0 ? 1.0 : std::pow(r, t.power));
          return (std::abs(el) < 1e-12 || std::abs(eh) < 1e-12) ? 0.5 * v : v;
        } else {
          return t.amp * std::pow(r, t.s);
        }
      },
      tag);
}

double tag_sample(const AnalyticTag& tag, const RadialGrid& grid, std::size_t i) {
  double a, b;
  if (!tag_support(tag, a, b)) return tag_value(tag, grid.r(i));
  const double u = grid.u(i);
  const double h = grid.h();
  if (std::abs(a - u) < kSnap * h) a = u;
  if (std::abs(b - u) < kSnap * h) b = u;
  const double lo = std::max(a, u - 0.5 * h);
  const double hi = std::min(b, u + 0.5 * h);
  if (!(hi > lo)) return 0.0;
  const double frac = std::min(1.0, (hi - lo) / h);
  double scale = 1.0;
  if (const auto* t = std::get_if<LogIndicatorTag>(&tag)) {
    scale = t->amp * (t->power == 0.0 ? 1.0 : std::exp(t->power * u));
  } else {
    scale = std::get<IndicatorTag>(tag).amp;
  }
  return scale * frac;
}

std::vector<double> tag_breaks(const AnalyticTag& tag) {
  double a, b;
  std::vector<double> out;
  if (!tag_support(tag, a, b)) return out;
  if (std::isfinite(a)) out.push_back(a);
  if (std::isfinite(b)) out.push_back(b);
  return out;
}

std::string tag_name(const AnalyticTag& tag) {
  switch (tag.index()) {
    case 1: return "gaussian";
    case 2: return "indicator";
    case 3: return "log-indicator";
    case 4: return "power";
    default: return "none";
  }
}

// ---------------------------------------------------------------------------
// RadialFunction

RadialFunction::RadialFunction(GridPtr grid, std::vector<double> samples, AnalyticTag tag)
    : grid_(std::move(grid)), samples_(std::move(samples)), tag_(std::move(tag)) {
  if (!grid_) throw ConfigError("radial function: null grid");
  if (samples_.size() != grid_->size()) throw ConfigError("radial function: sample count does not match grid");
  validate_tag(tag_);
  double mx = 0.0;
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const double v = samples_[i];
    if (!std::isfinite(v)) throw DataError("radial function: non-finite sample at r = " + fmt(grid_->r(i)));
    if (tagged()) {
      const double ref = tag_sample(tag_, *grid_, i);
      if (std::abs(v - ref) > 1e-12 * std::max(1.0, std::abs(ref))) {
        throw DataError("radial function: sample at r = " + fmt(grid_->r(i)) + " does not match its analytic tag");
      }
    }
    mx = std::max(mx, std::abs(v));
  }
  if (mx > 0.0 && std::abs(samples_.back()) > 1e-12 * mx) {
    warnings_.push_back("profile does not decay at rmax = " + fmt(grid_->rmax()) + " (|f| = " +
                        fmt(std::abs(samples_.back())) + ")");
  }
}

RadialFunction RadialFunction::from_tag(GridPtr grid, const AnalyticTag& tag) {
  if (!grid) throw ConfigError("radial function: null grid");
  validate_tag(tag);
  std::vector<double> s(grid->size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = tag_sample(tag, *grid, i);
  return RadialFunction(std::move(grid), std::move(s), tag);
}

RadialFunction RadialFunction::from_function(GridPtr grid, const std::function<double(double)>& f) {
  if (!grid) throw ConfigError("radial function: null grid");
  std::vector<double> s(grid->size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = f(grid->r(i));
  return RadialFunction(std::move(grid), std::move(s));
}

double RadialFunction::at(double r) const {
  if (tagged()) return tag_value(tag_, r);
  if (!(r > 0.0)) return 0.0;
  const double x = grid_->position(r);
  const double last = static_cast<double>(samples_.size() - 1);
  if (x < -kSnap || x > last + kSnap) return 0.0;
  const double xc = std::clamp(x, 0.0, last);
  const double fl = std::floor(xc);
  const auto i = static_cast<std::size_t>(fl);
  const double t = xc - fl;
  if (t < kSnap || i + 1 >= samples_.size()) return samples_[i];
  if (t > 1.0 - kSnap) return samples_[i + 1];
  return (1.0 - t) * samples_[i] + t * samples_[i + 1];
}

double RadialFunction::at_smooth(double r) const {
  if (tagged()) return tag_value(tag_, r);
  if (!(r > 0.0)) return 0.0;
  const double x = grid_->position(r);
  const double last = static_cast<double>(samples_.size() - 1);
  if (x < -kSnap || x > last + kSnap) return 0.0;
  return lagrange6(samples_, std::clamp(x, 0.0, last));
}

RadialFunction RadialFunction::scaled(double c) const {
  std::vector<double> s(samples_);
  for (double& v : s) v *= c;
  AnalyticTag t = tag_;
  std::visit(
      [c](auto& x) {
        if constexpr (!std::is_same_v<std::decay_t<decltype(x)>, std::monostate>) x.amp *= c;
      },
      t);
  RadialFunction out(grid_, std::move(s), t);
  return out;
}

RadialFunction RadialFunction::abs() const {
  std::vector<double> s(samples_);
  for (double& v : s) v = std::abs(v);
  AnalyticTag t = tag_;
  std::visit(
      [](auto& x) {
        if constexpr (!std::is_same_v<std::decay_t<decltype(x)>, std::monostate>) x.amp = std::abs(x.amp);
      },
      t);
  return RadialFunction(grid_, std::move(s), t);
}

double RadialFunction::max_abs() const {
  double m = 0.0;
  for (double v : samples_) m = std::max(m, std::abs(v));
  return m;
}

// ---------------------------------------------------------------------------
// Integrals

double integrate_u(const RadialFunction& f, const std::function<double(double)>& k, const std::vector<double>& kinks) {
  return integrate_generic(f, [&k](double u, double fv) { return fv == 0.0 ? 0.0 : fv * k(u); }, kinks);
}

double integrate_nu(const RadialFunction& f) {
  return integrate_generic(f, [](double, double fv) { return fv; }, {});
}

double integrate_nu_lambda(const RadialFunction& f, const DunklParams& params) {
  const double d = params.d_k;
  const double body = integrate_generic(f, [d](double u, double fv) { return fv == 0.0 ? 0.0 : fv * std::exp(d * u); }, {});
  const double r0 = f.grid().rmin();
  const double head = f.at(r0) * std::pow(r0, d) / d;
  return params.b_lambda * (body + head);
}

RadialFunction mellin_convolve(const RadialFunction& f, const RadialFunction& g) {
  const auto& gf = f.grid();
  const auto& gg = g.grid();
  if (!gf.same_step(gg)) throw ConfigError("mellin_convolve: grids must share the log step");
  // (f*g)(r) needs f at u - v for v in g's span; the shifted span must meet f's span.
  if (gf.u_min() - gg.u_max() > gf.u_max() + 0.5 * gf.h() || gf.u_max() - gg.u_min() < gf.u_min() - 0.5 * gf.h()) {
    throw ConfigError("mellin_convolve: grid spans are incompatible");
  }
  const std::size_t n = gf.size();
  std::vector<double> out(n, 0.0);
  const bool jumps = !tag_breaks(g.tag()).empty();
  const auto& wg = gg.nu_weights();
  for (std::size_t i = 0; i < n; ++i) {
    const double ui = gf.u(i);
    if (jumps) {
      std::vector<double> kinks;
      for (double b : tag_breaks(f.tag())) kinks.push_back(ui - b);
      if (!f.tagged()) {
        // Linear interpolation of f kinks at f's nodes, i.e. at ui - u_j.
        const double lo = ui - gf.u_max();
        const double hi = ui - gf.u_min();
        const double first = std::ceil((lo - gg.u_min()) / gg.h() - kSnap);
        for (double k = first; gg.u_min() + k * gg.h() <= hi; k += 1.0) kinks.push_back(gg.u_min() + k * gg.h());
      }
      out[i] = integrate_generic(g, [&](double v, double gv) { return gv == 0.0 ? 0.0 : gv * f.at(std::exp(ui - v)); },
                                 kinks);
    } else {
      double s = 0.0;
      for (std::size_t j = 0; j < gg.size(); ++j) {
        if (g[j] == 0.0) continue;
        s += wg[j] * g[j] * f.at(std::exp(ui - gg.u(j)));
      }
      out[i] = s;
    }
  }
  return RadialFunction(f.grid_ptr(), std::move(out));
}

NormValue weighted_lp_norm(const RadialFunction& f, double p, double weight_exponent, const DunklParams& params) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("weighted_lp_norm: p must be a finite real >= 1");
  const double e = weight_exponent * p + params.d_k;  // power of r against du
  auto F = [p, e](double u, double fv) { return fv == 0.0 ? 0.0 : std::pow(std::abs(fv), p) * std::exp(e * u); };
  NormValue out;
  double body = integrate_generic(f, F, {});
  const auto& g = f.grid();
  double mx = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) mx = std::max(mx, F(g.u(i), f[i]));
  const double f0 = f.at(g.rmin());
  if (f0 != 0.0) {
    if (e <= 0.0) {
      out.truncated = true;
      out.warning = "weighted norm diverges at the origin for this weight";
    } else {
      body += std::pow(std::abs(f0), p) * std::exp(e * g.u_min()) / e;
    }
  }
  if (mx > 0.0 && F(g.u_max(), f[g.size() - 1]) > 1e-12 * mx) {
    out.truncated = true;
    if (out.warning.empty()) out.warning = "integrand has not decayed at rmax; norm truncated at the grid edge";
  }
  out.value = std::pow(params.b_lambda * body, 1.0 / p);
  return out;
}

NormValue lp_norm_nu(const RadialFunction& f, double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("lp_norm_nu: p must be a finite real >= 1");
  auto F = [p](double, double fv) { return fv == 0.0 ? 0.0 : std::pow(std::abs(fv), p); };
  NormValue out;
  const double body = integrate_generic(f, F, {});
  double mx = 0.0;
  for (double v : f.samples()) mx = std::max(mx, std::abs(v));
  if (mx > 0.0 && (std::abs(f.samples().front()) > 1e-12 * mx || std::abs(f.samples().back()) > 1e-12 * mx)) {
    out.truncated = true;
    out.warning = "profile has not decayed at a grid edge; dnu norm truncated";
  }
  out.value = std::pow(body, 1.0 / p);
  return out;
}

std::vector<double> cumulative_nu_lambda(const RadialFunction& f, const DunklParams& params) {
  const auto& g = f.grid();
  const std::size_t n = g.size();
  const double d = params.d_k;
  const double b = params.b_lambda;
  std::vector<double> c(n, 0.0);
  c[0] = b * f.at(g.rmin()) * std::pow(g.rmin(), d) / d;
  if (f.tagged()) {
    const auto breaks = tag_breaks(f.tag());
    const auto& rule = cell_rule();
    auto panel = [&](double a, double e) {
      const double mid = 0.5 * (a + e), half = 0.5 * (e - a);
      double s = 0.0;
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double u = mid + half * rule.nodes[q];
        s += rule.weights[q] * f.at(std::exp(u)) * std::exp(d * u);
      }
      return half * s;
    };
    for (std::size_t i = 0; i + 1 < n; ++i) {
      double a = g.u(i);
      const double e = g.u(i + 1);
      double s = 0.0;
      for (double br : breaks) {
        if (br > a && br < e) {
          s += panel(a, br);
          a = br;
        }
      }
      s += panel(a, e);
      c[i + 1] = c[i] + b * s;
    }
    return c;
  }
  std::vector<double> F(n);
  for (std::size_t i = 0; i < n; ++i) F[i] = f[i] * std::exp(d * g.u(i));
  const double h = g.h();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double s;
    if (n < 4) {
      s = 0.5 * (F[i] + F[i + 1]);
    } else if (i == 0) {
      s = (9.0 * F[0] + 19.0 * F[1] - 5.0 * F[2] + F[3]) / 24.0;
    } else if (i + 2 >= n) {
      s = (F[i - 2] - 5.0 * F[i - 1] + 19.0 * F[i] + 9.0 * F[i + 1]) / 24.0;
    } else {
      s = (-F[i - 1] + 13.0 * F[i] + 13.0 * F[i + 1] - F[i + 2]) / 24.0;
    }
    c[i + 1] = c[i] + b * h * s;
  }
  return c;
}

// ---------------------------------------------------------------------------
// CSV

void write_csv(std::ostream& os, const std::vector<double>& r, const std::vector<double>& values) {
  if (r.size() != values.size()) throw ConfigError("write_csv: column lengths differ");
  os << "r,value\n";
  for (std::size_t i = 0; i < r.size(); ++i) os << fmt(r[i]) << ',' << fmt(values[i]) << '\n';
}

void write_csv(std::ostream& os, const RadialFunction& f) { write_csv(os, f.grid().nodes(), f.samples()); }

CsvTable read_csv(std::istream& is) {
  CsvTable t;
  std::string line;
  bool header = false;
  std::size_t lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  auto parse = [&](const std::string& s) {
    const std::string v = trim(s);
    double x = 0.0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), x);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
      throw DataError("csv line " + std::to_string(lineno) + ": cannot parse '" + v + "'");
    }
    return x;
  };
  while (std::getline(is, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    if (!header) {
      if (line != "r,value") throw DataError("csv: expected header 'r,value'");
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw DataError("csv line " + std::to_string(lineno) + ": expected two columns");
    t.r.push_back(parse(line.substr(0, comma)));
    t.value.push_back(parse(line.substr(comma + 1)));
  }
  if (!header) throw DataError("csv: empty input");
  return t;
}

RadialFunction function_from_table(const CsvTable& table) {
  std::vector<double> r, v;
  for (std::size_t i = 0; i < table.r.size(); ++i) {
    if (table.r[i] == 0.0) continue;
    if (!(table.r[i] > 0.0)) throw DataError("profile table: negative radius");
    r.push_back(table.r[i]);
    v.push_back(table.value[i]);
  }
  if (r.size() < 2) throw DataError("profile table: need at least two positive radii");
  for (std::size_t i = 1; i < r.size(); ++i) {
    if (!(r[i] > r[i - 1])) throw DataError("profile table: radii must be strictly increasing");
  }
  auto grid = RadialGrid::log_spaced(r.front(), r.back(), r.size());
  bool uniform = true;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (std::abs(std::log(r[i]) - grid->u(i)) > 1e-9 * grid->h()) {
      uniform = false;
      break;
    }
  }
  if (uniform) return RadialFunction(grid, v);
  std::vector<double> s(r.size());
  std::size_t j = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double x = grid->r(i);
    while (j + 2 < r.size() && r[j + 1] < x) ++j;
    const double t = std::clamp((std::log(x) - std::log(r[j])) / (std::log(r[j + 1]) - std::log(r[j])), 0.0, 1.0);
    s[i] = (1.0 - t) * v[j] + t * v[j + 1];
  }
  RadialFunction f(grid, std::move(s));
  f.add_warning("input radii are not log-uniform; profile resampled onto a log grid");
  return f;
}

}  // namespace dunkl
