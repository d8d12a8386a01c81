#include "dunkl/params.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dunkl/error.hpp"
#include "dunkl/specfun.hpp"

namespace dunkl {

namespace {

DunklParams fill(double lambda_k) {
  if (!std::isfinite(lambda_k)) throw ConfigError("lambda_k must be finite");
  if (!(lambda_k > -0.5)) throw ConfigError("lambda_k must exceed -1/2 (got " + std::to_string(lambda_k) + ")");
  DunklParams p;
  p.lambda_k = lambda_k;
  p.d_k = 2.0 * lambda_k + 2.0;
  p.b_lambda = std::exp(-lambda_k * std::numbers::ln2 - gamma_ln(lambda_k + 1.0));
  p.c_lambda = 1.0 / angular_mass(lambda_k);
  return p;
}

}  // namespace

DunklParams params_from_rootsystem(const RootSystemSpec& spec) {
  if (spec.lambda_override) {
    auto p = fill(*spec.lambda_override);
    p.synthetic = true;
    return p;
  }
  if (spec.dimension < 1) throw ConfigError("dimension must be a positive integer");
  double sum = 0.0;
  for (const auto& o : spec.orbits) {
    if (o.count < 1) throw ConfigError("orbit '" + o.label + "': root count must be positive");
    if (!(o.kappa >= 0.0) || !std::isfinite(o.kappa)) {
      throw ConfigError("orbit '" + o.label + "': multiplicity must be finite and >= 0");
    }
    sum += o.count * o.kappa;
  }
  return fill(0.5 * spec.dimension - 1.0 + sum);
}

DunklParams params_from_lambda(double lambda_k) {
  auto p = fill(lambda_k);
  p.synthetic = true;
  return p;
}

double riesz_gamma(const DunklParams& params, double alpha) {
  if (!(alpha > 0.0) || !(alpha < params.d_k)) throw DomainError("riesz_gamma: alpha must lie in (0, d_k)");
  return std::exp((alpha - 0.5 * params.d_k) * std::numbers::ln2 + gamma_ln(0.5 * alpha) -
                  gamma_ln(0.5 * (params.d_k - alpha)));
}

}  // namespace dunkl
