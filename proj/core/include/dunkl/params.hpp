#pragma once

#include <optional>
#include <string>
#include <vector>

namespace dunkl {

/// One orbit of positive roots under the reflection group.
struct RootOrbit {
  std::string label;
  int count = 1;       // roots of R+ in the orbit
  double kappa = 0.0;  // multiplicity on the orbit
};

struct RootSystemSpec {
  int dimension = 1;
  std::vector<RootOrbit> orbits;
  /// Direct override; bypasses the root-system reduction.
  std::optional<double> lambda_override;
};

struct DunklParams {
  double lambda_k = 0.0;
  double d_k = 2.0;
  double b_lambda = 1.0;
  double c_lambda = 1.0 / 3.14159265358979323846;
  /// True when lambda_k came from an override rather than a root system.
  bool synthetic = false;
};

/// lambda_k = d/2 - 1 + sum(count * kappa), plus the derived constants.
DunklParams params_from_rootsystem(const RootSystemSpec& spec);

/// Parameters for a bare lambda_k > -1/2 (marked synthetic).
DunklParams params_from_lambda(double lambda_k);

/// gamma_alpha = 2^{alpha - d_k/2} Gamma(alpha/2) / Gamma((d_k - alpha)/2), 0 < alpha < d_k.
double riesz_gamma(const DunklParams& params, double alpha);

}  // namespace dunkl
