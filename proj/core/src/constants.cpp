#include "dunkl/constants.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "dunkl/specfun.hpp"

namespace dunkl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool near(double a, double b) { return std::abs(a - b) <= 1e-10 * (1.0 + std::abs(a) + std::abs(b)); }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

[[noreturn]] void inadmissible(Condition c, const std::string& detail) {
  throw InadmissibleError(c, std::string(condition_name(c)) + ": " + detail);
}

}  // namespace

const char* condition_name(Condition c) {
  switch (c) {
    case Condition::p_range: return "p_range";
    case Condition::q_range: return "q_range";
    case Condition::q_equals_p: return "q_equals_p";
    case Condition::alpha_range: return "alpha_range";
    case Condition::gamma_bound: return "gamma_bound";
    case Condition::beta_bound: return "beta_bound";
    case Condition::gamma_beta_sum: return "gamma_beta_sum";
    case Condition::balance: return "balance";
    case Condition::hardy_order: return "hardy_order";
    case Condition::hardy_sum: return "hardy_sum";
  }
  return "unknown";
}

const char* kind_name(Classification::Kind k) {
  switch (k) {
    case Classification::Kind::strong: return "strong";
    case Classification::Kind::weak: return "weak";
    case Classification::Kind::inadmissible: return "inadmissible";
  }
  return "unknown";
}

double conjugate_exponent(double p) {
  if (!(p >= 1.0)) throw DomainError("conjugate exponent needs p >= 1");
  if (p == 1.0) return kInf;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

Classification classify_tuple(const InequalityParams& ip) {
  const double d = ip.params.d_k;
  const double a = ip.alpha, be = ip.beta, ga = ip.gamma, p = ip.p, q = ip.q;
  auto fail = [](Condition c, std::string msg) {
    return Classification{Classification::Kind::inadmissible, c, std::move(msg)};
  };
  const bool weak = p == 1.0;
  if (!(p >= 1.0) || !std::isfinite(p)) return fail(Condition::p_range, "need 1 <= p < inf");
  if (!(q >= p) || !std::isfinite(q)) return fail(Condition::q_range, "need p <= q < inf");
  if (weak && !(q > 1.0)) return fail(Condition::q_range, "weak type needs q > 1");
  if (!(a > 0.0) || !(a < d)) return fail(Condition::alpha_range, "need 0 < alpha < d_k");
  if (!(ga < d / q)) return fail(Condition::gamma_bound, "need gamma < d_k/q");
  if (!(ga + be >= 0.0)) return fail(Condition::gamma_beta_sum, "need gamma + beta >= 0");
  if (weak) {
    if (!(be <= 0.0)) return fail(Condition::beta_bound, "weak type needs beta <= 0");
  } else if (!(be < d * (1.0 - 1.0 / p))) {
    return fail(Condition::beta_bound, "need beta < d_k/p'");
  }
  if (!near(a - ga - be, d * (1.0 / p - 1.0 / q))) {
    return fail(Condition::balance, "need alpha - gamma - beta = d_k (1/p - 1/q)");
  }
  return {weak ? Classification::Kind::weak : Classification::Kind::strong, std::nullopt, {}};
}

namespace {

void check_stein_weiss(const InequalityParams& ip) {
  const double d = ip.params.d_k, p = ip.p;
  if (!(p > 1.0) || !std::isfinite(p)) inadmissible(Condition::p_range, "sharp constant needs 1 < p < inf");
  if (ip.q != p) inadmissible(Condition::q_equals_p, "sharp constant is known only for q = p");
  if (!(ip.alpha > 0.0)) inadmissible(Condition::alpha_range, "need alpha > 0");
  if (!(ip.gamma < d / p)) inadmissible(Condition::gamma_bound, "need gamma < d_k/p");
  if (!(ip.beta < d / conjugate_exponent(p))) inadmissible(Condition::beta_bound, "need beta < d_k/p'");
  if (!near(ip.alpha, ip.gamma + ip.beta)) inadmissible(Condition::balance, "need alpha = gamma + beta");
}

}  // namespace

SharpConstant stein_weiss_sharp(const InequalityParams& ip) {
  check_stein_weiss(ip);
  const double d = ip.params.d_k, p = ip.p, pp = conjugate_exponent(p);
  const double v = -ip.alpha * std::log(2.0) + gamma_ln(0.5 * (d / p - ip.gamma)) + gamma_ln(0.5 * (d / pp - ip.beta)) -
                   gamma_ln(0.5 * (d / pp + ip.gamma)) - gamma_ln(0.5 * (d / p + ip.beta));
  return {std::exp(v), "c(" + fmt(ip.alpha) + "," + fmt(ip.beta) + "," + fmt(ip.gamma) + "," + fmt(p) + "," + fmt(p) +
                           "," + fmt(d) + ")"};
}

double classical_stein_weiss(double alpha, double beta, double p, double d) {
  const double pp = conjugate_exponent(p);
  return std::exp(-alpha * std::log(2.0) + gamma_ln(0.5 * (d / p - alpha + beta)) + gamma_ln(0.5 * (d / pp - beta)) -
                  gamma_ln(0.5 * (d / pp + alpha - beta)) - gamma_ln(0.5 * (d / p + beta)));
}

double stein_weiss_integral(const InequalityParams& ip, const RieszKernelSpec& spec) {
  const double d = ip.params.d_k, p = ip.p;
  if (!(p > 1.0) || !std::isfinite(p)) inadmissible(Condition::p_range, "need 1 < p < inf");
  if (ip.q != p) inadmissible(Condition::q_equals_p, "need q = p");
  if (!near(spec.alpha, ip.alpha) || !near(spec.params.d_k, d)) {
    throw ConfigError("stein_weiss_integral: kernel spec does not match the inequality parameters");
  }
  if (!near(ip.alpha, ip.gamma + ip.beta)) inadmissible(Condition::balance, "need alpha = gamma + beta");
  const double pp = conjugate_exponent(p);
  // t^mu Phi0(t, 1) ~ t^mu near 0 and t^{beta - d/p'} at infinity.
  const double mu = d / p - ip.alpha + ip.beta;
  const double decay_inf = d / pp - ip.beta;
  if (!(mu > 0.0)) {
    throw DivergenceError(DivergenceError::Where::origin, "stein_weiss_integral diverges at t = 0 (gamma >= d_k/p)");
  }
  if (!(decay_inf > 0.0)) {
    throw DivergenceError(DivergenceError::Where::infinity,
                          "stein_weiss_integral diverges at t = inf (beta >= d_k/p')");
  }

  static const QuadratureRule gl = gauss_legendre(20);
  const double a = spec.alpha;
  const auto inner = a < 1.0 ? gauss_jacobi(20, 0.0, a - 1.0) : gl;
  // Phi0(t, 1) = Phi0(1, t); with t = e^sigma the integrand is e^{mu sigma} Phi0(1, e^sigma).
  auto F = [&](double sigma) { return phi0_weighted(sigma, mu, spec); };

  double total = 0.0;
  for (int side : {-1, 1}) {
    auto G = [&](double s) { return F(side * s); };
    auto panel = [&](double s0, double s1) {
      const double mid = 0.5 * (s0 + s1), half = 0.5 * (s1 - s0);
      double acc = 0.0;
      for (std::size_t k = 0; k < gl.nodes.size(); ++k) acc += gl.weights[k] * G(mid + half * gl.nodes[k]);
      return half * acc;
    };
    // Graded toward the singularity at s = 0.
    double sum = 0.0;
    double s1 = 1.0;
    for (int l = 0; l < 50; ++l) {
      sum += panel(0.5 * s1, s1);
      s1 *= 0.5;
    }
    {
      double acc = 0.0;
      for (std::size_t k = 0; k < inner.nodes.size(); ++k) {
        const double s = 0.5 * s1 * (1.0 + inner.nodes[k]);
        acc += inner.weights[k] * (a < 1.0 ? G(s) * std::pow(s, 1.0 - a) : G(s));
      }
      sum += acc * (a < 1.0 ? std::pow(0.5 * s1, a) : 0.5 * s1);
    }
    // Outward panels; width capped by the exponential decay scale.
    const double rate = side > 0 ? decay_inf : mu;
    const double wmax = 2.0 / rate;
    double s = 1.0;
    for (int guard = 0; guard < 100000; ++guard) {
      const double w = std::min(s, wmax);
      const double part = panel(s, s + w);
      sum += part;
      s += w;
      if (rate * s > 45.0 && std::abs(part) < 1e-18 * std::abs(sum)) break;
    }
    total += sum;
  }
  return ip.params.b_lambda * total;
}

double hardy_sharp(double a, double b, double p, const DunklParams& params) {
  if (!(p >= 1.0)) inadmissible(Condition::p_range, "need 1 <= p <= inf");
  const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
  const double gap = a * (1.0 - inv_p) - b * inv_p;
  if (!near(a + b, params.d_k)) inadmissible(Condition::hardy_sum, "need a + b = d_k");
  if (!(gap > 0.0)) inadmissible(Condition::hardy_order, "Hardy needs a/p' > b/p");
  return params.b_lambda / gap;
}

double bellman_sharp(double a, double b, double p, const DunklParams& params) {
  if (!(p >= 1.0)) inadmissible(Condition::p_range, "need 1 <= p <= inf");
  const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
  const double gap = b * inv_p - a * (1.0 - inv_p);
  if (!near(a + b, params.d_k)) inadmissible(Condition::hardy_sum, "need a + b = d_k");
  if (!(gap > 0.0)) inadmissible(Condition::hardy_order, "Bellman needs a/p' < b/p");
  return params.b_lambda / gap;
}

}  // namespace dunkl
