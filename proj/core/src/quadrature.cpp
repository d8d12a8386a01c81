#include <algorithm>
#include <cmath>
#include <numbers>

#include "dunkl/error.hpp"
#include "dunkl/specfun.hpp"

namespace dunkl {

namespace {

// Jacobi P_n^{(a,b)}(cos theta) via the three-term recurrence. Returns P_n,
// P_{n-1} and D = (1 - z^2) P_n'(z), which avoids dividing by a small
// 1 - z^2 near the endpoints.
struct JacobiEval {
  double p;
  double p_prev;
  double d;
};

JacobiEval jacobi_eval(std::size_t n, double a, double b, double z) {
  const double ab = a + b;
  double p1 = 0.5 * (a - b + (2.0 + ab) * z);
  double p2 = 1.0;
  double temp = 2.0 + ab;
  for (std::size_t j = 2; j <= n; ++j) {
    const double p3 = p2;
    p2 = p1;
    const double jd = static_cast<double>(j);
    temp = 2.0 * jd + ab;
    const double aa = 2.0 * jd * (jd + ab) * (temp - 2.0);
    const double bb = (temp - 1.0) * (a * a - b * b + temp * (temp - 2.0) * z);
    const double cc = 2.0 * (jd - 1.0 + a) * (jd - 1.0 + b) * temp;
    p1 = (bb * p2 - cc * p3) / aa;
  }
  const double nd = static_cast<double>(n);
  const double d = (nd * (a - b - temp * z) * p1 + 2.0 * (nd + a) * (nd + b) * p2) / temp;
  return {p1, p2, d};
}

}  // namespace

QuadratureRule gauss_jacobi(std::size_t n, double a, double b) {
  if (n == 0) throw DomainError("gauss_jacobi: order must be positive");
  if (!(a > -1.0) || !(b > -1.0)) throw DomainError("gauss_jacobi: exponents must exceed -1");

  QuadratureRule rule;
  rule.kind = QuadratureRule::Kind::jacobi;
  rule.order = n;
  std::vector<double> theta(n), w(n);
  const double nd = static_cast<double>(n);
  const double ab = a + b;

  // Newton in theta (z = cos theta) from the asymptotic root locations;
  // roots are produced with theta increasing, i.e. z decreasing.
  for (std::size_t k = 0; k < n; ++k) {
    double th = (static_cast<double>(k) + 0.75 + 0.5 * a) * std::numbers::pi / (nd + 0.5 * (ab + 1.0));
    th = std::clamp(th, 1e-3 / nd, std::numbers::pi - 1e-3 / nd);
    JacobiEval ev{};
    for (int it = 0; it < 100; ++it) {
      ev = jacobi_eval(n, a, b, std::cos(th));
      const double s = std::sin(th);
      // dP/dtheta = -sin(theta) P'(z) = -D / sin(theta)
      const double step = ev.p * s / ev.d;
      th += step;
      if (std::abs(step) <= 1e-15 * th) break;
    }
    ev = jacobi_eval(n, a, b, std::cos(th));
    theta[k] = th;
    const double s = std::sin(th);
    // Unnormalized; the Gamma-ratio constant loses digits for large n.
    w[k] = s * s / (ev.d * ev.p_prev);
  }

  for (std::size_t k = 1; k < n; ++k) {
    if (!(theta[k] > theta[k - 1])) throw DivergenceError(DivergenceError::Where::series, "gauss_jacobi: root finding failed");
  }
  if (!(theta.front() > 0.0) || !(theta.back() < std::numbers::pi)) {
    throw DivergenceError(DivergenceError::Where::series, "gauss_jacobi: root outside (-1, 1)");
  }
  for (double wi : w) {
    if (!(wi > 0.0) || !std::isfinite(wi)) throw DivergenceError(DivergenceError::Where::series, "gauss_jacobi: invalid weight");
  }
  const double mass = std::exp((ab + 1.0) * std::log(2.0) + gamma_ln(a + 1.0) + gamma_ln(b + 1.0) - gamma_ln(ab + 2.0));
  double total = 0.0;
  for (double wi : w) total += wi;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    rule.nodes[n - 1 - k] = std::cos(theta[k]);
    rule.weights[n - 1 - k] = w[k] * (mass / total);
  }
  return rule;
}

QuadratureRule gauss_legendre(std::size_t n) {
  auto rule = gauss_jacobi(n, 0.0, 0.0);
  rule.kind = QuadratureRule::Kind::radial_legendre_panel;
  return rule;
}

QuadratureRule make_angular_rule(double lambda, std::size_t n) {
  if (!(lambda > -0.5)) throw DomainError("make_angular_rule: lambda must be > -1/2");
  if (n == 0) throw DomainError("make_angular_rule: order must be positive");
  auto rule = gauss_jacobi(n, lambda - 0.5, lambda - 0.5);
  rule.kind = QuadratureRule::Kind::angular_jacobi;
  return rule;
}

}  // namespace dunkl
