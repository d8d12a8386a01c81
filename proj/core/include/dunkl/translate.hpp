#pragma once

#include <cstddef>

#include "dunkl/hankel.hpp"
#include "dunkl/params.hpp"
#include "dunkl/radial.hpp"

namespace dunkl {

struct TranslateOptions {
  std::size_t initial_order = 64;
  std::size_t max_order = 1024;
  /// Doubling stops once successive results differ by less than this (relative to max|f|).
  double tolerance = 1e-10;
};

/// G^s f(r) = c_lambda int_0^pi f(sqrt(r^2 + s^2 - 2 r s cos phi)) sin^{2 lambda} phi dphi
/// at a single r. Indicator tags use the exact arc measure (incomplete Beta).
/// `converged` (optional) reports whether the order-doubling loop met the tolerance.
double gegenbauer_translate_at(const RadialFunction& f, double s, double r, const DunklParams& params,
                               const TranslateOptions& opt = {}, bool* converged = nullptr);

/// G^s f on f's grid.
RadialFunction gegenbauer_translate(const RadialFunction& f, double s, const DunklParams& params,
                                    const TranslateOptions& opt = {});

/// G^s f(r) = int j_lambda(r t) j_lambda(s t) H f(t) dnu_lambda(t), evaluated as
/// H[j_lambda(s .) H f]. H f is cut at the first point past its peak where it
/// falls below 1e-13 max|H f| (quadrature noise would otherwise be amplified by
/// the dnu_lambda weight).
RadialFunction translate_spectral(const RadialFunction& f, double s, const DunklParams& params,
                                  const HankelOptions& opt = {});

}  // namespace dunkl
