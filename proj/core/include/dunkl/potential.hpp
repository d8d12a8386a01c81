#pragma once

#include <string>
#include <vector>

#include "dunkl/params.hpp"
#include "dunkl/radial.hpp"

namespace dunkl {

struct RieszKernelSpec {
  double alpha = 1.0;
  DunklParams params;
  double gamma_alpha = 1.0;
};

/// Validates 0 < alpha < d_k and fills gamma_alpha.
RieszKernelSpec make_riesz_spec(const DunklParams& params, double alpha);

/// psi(rho) = int_0^pi (1 - rho cos phi)^{(alpha - d_k)/2} sin^{2 lambda} phi dphi, 0 <= rho < 1.
/// Series for rho <= 0.9, split quadrature above.
double psi(double rho, double alpha, const DunklParams& params);

/// Power series in rho^2 (any 0 <= rho < 1; slow near 1).
double psi_series(double rho, double alpha, const DunklParams& params);

/// Split quadrature in u = cos phi: Gauss-Jacobi on [-1, 0], geometrically
/// graded panels toward u = 1 on [0, 1].
double psi_quadrature(double rho, double alpha, const DunklParams& params);

/// psi(1 - gap) for gap in (0, 1]; keeps full relative accuracy of the gap
/// when rho is within rounding of 1.
double psi_gap(double gap, double alpha, const DunklParams& params);

/// psi(1): finite only for alpha > 1, +inf otherwise.
double psi_at_one(double alpha, const DunklParams& params);

/// Spherical average of the Riesz kernel,
/// Phi0(r, t) = gamma^{-1} c_lambda (r^2 + t^2)^{(alpha - d_k)/2} psi(2 r t / (r^2 + t^2)).
/// Returns +inf at r = t when alpha <= 1. Throws DomainError at (0, 0).
double phi0(double r, double t, const RieszKernelSpec& spec);

/// e^{mu sigma} Phi0(1, e^sigma), evaluated without overflow for large |sigma|.
double phi0_weighted(double sigma, double mu, const RieszKernelSpec& spec);

struct RieszOptions {
  /// Gauss-Legendre points per grid cell for the kernel moments.
  std::size_t cell_order = 10;
  /// Geometric refinement levels toward the kernel singularity.
  std::size_t grading_levels = 40;
};

/// I_alpha f(r) = int_0^inf f(t) Phi0(r, t) dnu_lambda(t) on f's grid.
///
/// Product integration: with t = r e^sigma the operator becomes a convolution
/// in sigma against k(sigma) = Phi0(1, e^sigma) e^{d_k sigma}, and f is
/// replaced by its piecewise 6-point Lagrange interpolant in ln t. The kernel
/// moments are computed once per grid, with geometric grading into the
/// singular cells next to sigma = 0.
RadialFunction riesz_apply(const RadialFunction& f, const RieszKernelSpec& spec, const RieszOptions& opt = {});

/// I_alpha f(0) = gamma^{-1} int f(t) t^{alpha - d_k} dnu_lambda(t).
double riesz_at_origin(const RadialFunction& f, const RieszKernelSpec& spec);

struct MaximalResult {
  RadialFunction value;                       // sup_R R^{alpha-d_k} |int_0^R G^t f(r) dnu_lambda(t)|
  std::vector<double> normalized;             // alpha = 0 only: sup_R |...| / (b R^{d_k}/d_k)
  std::vector<double> argmax_R;               // maximizing radius per node
  double at_origin = 0.0;                     // same supremum at r = 0
  double normalized_at_origin = 0.0;          // alpha = 0 only
};

/// Default ball radii: `per_decade` log-spaced radii per decade over the whole
/// grid span. The last one, rmax, stands in for R = infinity.
std::vector<double> default_ball_radii(const RadialFunction& f, std::size_t per_decade = 64);

/// Fractional maximal function on f's grid, sup taken over R_grid. alpha in [0, d_k).
MaximalResult maximal_apply(const RadialFunction& f, double alpha, const DunklParams& params,
                            const std::vector<double>& R_grid);

/// H f(r) = int_0^r f dnu_lambda.
RadialFunction hardy_apply(const RadialFunction& f, const DunklParams& params);

/// B f(r) = int_r^inf f dnu_lambda, truncated at rmax.
RadialFunction bellman_apply(const RadialFunction& f, const DunklParams& params);

}  // namespace dunkl
