#pragma once

#include <optional>
#include <string>

#include "dunkl/error.hpp"
#include "dunkl/params.hpp"
#include "dunkl/potential.hpp"

namespace dunkl {

/// || |x|^{-gamma} I_alpha f ||_q <= c || |x|^beta f ||_p. p = 1 means weak type.
struct InequalityParams {
  double alpha = 1.0;
  double beta = 0.0;
  double gamma = 1.0;
  double p = 2.0;
  double q = 2.0;
  DunklParams params;
};

struct Classification {
  enum class Kind { strong, weak, inadmissible };
  Kind kind = Kind::inadmissible;
  std::optional<Condition> reason;  // first violated hypothesis when inadmissible
  std::string message;
};

const char* kind_name(Classification::Kind k);

/// Total function: strong, weak, or the first violated hypothesis.
Classification classify_tuple(const InequalityParams& ip);

struct SharpConstant {
  double value = 0.0;
  std::string label;  // classical constant it coincides with, "c(alpha,beta,gamma,p,p,d_k)"
};

/// 2^{-alpha} G((d/p - gamma)/2) G((d/p' - beta)/2) / (G((d/p' + gamma)/2) G((d/p + beta)/2)), d = d_k.
/// Needs 1 < p < inf, q = p, alpha > 0, alpha = gamma + beta, gamma < d/p, beta < d/p'.
/// Throws InadmissibleError naming the violated hypothesis.
SharpConstant stein_weiss_sharp(const InequalityParams& ip);

/// Euclidean constant written in terms of (alpha, beta) alone,
/// 2^{-alpha} G((d/p - alpha + beta)/2) G((d/p' - beta)/2) / (G((d/p' + alpha - beta)/2) G((d/p + beta)/2)).
double classical_stein_weiss(double alpha, double beta, double p, double d);

/// b_lambda int_0^inf t^{d/p - alpha + beta} Phi0(t, 1) dt/t by quadrature, split at t = 1 with
/// graded panels on both sides. spec.alpha must equal ip.alpha.
/// DivergenceError(origin) if gamma >= d/p, DivergenceError(infinity) if beta >= d/p'.
double stein_weiss_integral(const InequalityParams& ip, const RieszKernelSpec& spec);

/// b_lambda / (a/p' - b/p); admissible iff a/p' > b/p and a + b = d_k. p in [1, inf].
double hardy_sharp(double a, double b, double p, const DunklParams& params);

/// b_lambda / (b/p - a/p'); admissible iff a/p' < b/p and a + b = d_k. p in [1, inf].
double bellman_sharp(double a, double b, double p, const DunklParams& params);

/// p' = p/(p - 1), with 1' = inf and inf' = 1.
double conjugate_exponent(double p);

}  // namespace dunkl
