#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "dunkl/constants.hpp"
#include "dunkl/potential.hpp"
#include "dunkl/radial.hpp"

namespace dunkl {

struct NormEstimate {
  double ratio = 0.0;
  double L = 0.0;      // family parameter
  double sharp = 0.0;  // reference constant
  double gap = 0.0;    // (sharp - ratio) / sharp
  // diagnostics
  double u_min = 0.0, u_max = 0.0;
  std::size_t grid_size = 0;
  std::size_t quadrature_order = 0;
  double tolerance = 0.0;
  std::vector<std::string> warnings;
};

/// Bilinear form (2L)^{-1} int int h(r) f(t) g(r/t) dnu dnu with f, h the normalized
/// indicators of [e^{-L}, e^{L}]; equals (2L)^{-1} int g(e^u) (2L - |u|)^+ du.
/// Sharp reference ||g||_{1, dnu}. Throws DomainError for negative g.
NormEstimate mellin_extremizer_ratio(const RadialFunction& g, double p, double L);

/// b_lambda * mellin_extremizer_ratio(g0) with g0(t) = t^{b - d_k/p'} on [1, inf);
/// reference hardy_sharp(a, b, p).
NormEstimate hardy_norm_estimate(double a, double b, double p, const DunklParams& params, double L);

/// Same with g0(t) = t^{b - d_k/p'} on (0, 1]; reference bellman_sharp(a, b, p).
NormEstimate bellman_norm_estimate(double a, double b, double p, const DunklParams& params, double L);

/// || r^{-gamma} I_alpha f ||_p / || r^beta f ||_p against stein_weiss_sharp(ip).
NormEstimate stein_weiss_ratio(const RadialFunction& f, const InequalityParams& ip, const RieszKernelSpec& spec);

/// r^{-beta - d_k/p} (2L)^{-1/p} on [e^{-L}, e^{L}], the radial extremizing family.
RadialFunction stein_weiss_family(const GridPtr& grid, const InequalityParams& ip, double L);

struct WeakTypeResult {
  double value = 0.0;        // sup over the lambda grid
  double lambda_at_sup = 0.0;
  std::vector<double> lambdas;
  std::vector<double> measures;  // mu_k{ r^{-gamma} |I_alpha f| > lambda }
  std::vector<std::string> warnings;
};

/// 64 log-spaced levels over 6 decades centred on the median of `profile`.
std::vector<double> default_lambda_grid(const std::vector<double>& profile, std::size_t n = 64, double decades = 6.0);

/// sup_lambda lambda^q mu_k{r^{-gamma} |I_alpha f| > lambda} / || r^beta f ||_1^q.
/// Needs classify_tuple(ip) == weak. Empty lambda_grid selects default_lambda_grid.
WeakTypeResult weak_type_scan(const RadialFunction& f, const InequalityParams& ip, const RieszKernelSpec& spec,
                              const std::vector<double>& lambda_grid = {});

/// One JSON object per line.
std::string to_json_line(const NormEstimate& e);

struct SweepRow {
  InequalityParams ip;
  NormEstimate est;
};

/// Columns alpha,beta,gamma,p,q,lambda_k,d_k,ratio,sharp,gap,L,grid_size.
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

}  // namespace dunkl
