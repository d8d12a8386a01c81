#pragma once

#include <string>
#include <vector>

#include "dunkl/params.hpp"
#include "dunkl/radial.hpp"

namespace dunkl {

struct HankelOptions {
  /// Trapezoid points per oscillation of j_lambda(rho t) at the hand-over radius.
  double points_per_period = 25.0;
  /// Width in u = ln t of the erfc window blending the two regions.
  double window = 0.1;
  /// Gauss-Legendre points per half-period panel in the oscillatory region.
  std::size_t panel_order = 10;
  /// Panels summed directly before the tail is extrapolated.
  std::size_t max_panels = 128;
  /// Levels of repeated averaging of the last partial sums.
  std::size_t averaging_levels = 12;
};

struct HankelValues {
  std::vector<double> values;
  std::vector<std::string> warnings;
};

/// H_lambda f(rho) = int f(t) j_lambda(rho t) dnu_lambda(t) at each rho >= 0.
///
/// Small t: trapezoid rule on f's log grid (spectrally accurate while the
/// oscillation is resolved). Large t: Gauss-Legendre on half-period panels
/// aligned with the zeros of the Bessel asymptotics, with repeated averaging of
/// the partial sums when the profile outlasts max_panels. The two regions are
/// blended by a smooth erfc window in ln t.
HankelValues hankel_values(const RadialFunction& f, const std::vector<double>& rho, const DunklParams& params,
                           const HankelOptions& opt = {});

/// Transform sampled on out_grid.
RadialFunction hankel_transform(const RadialFunction& f, const GridPtr& out_grid, const DunklParams& params,
                                const HankelOptions& opt = {});

}  // namespace dunkl
