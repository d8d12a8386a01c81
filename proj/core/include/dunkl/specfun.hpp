#pragma once

#include <cstddef>
#include <vector>

namespace dunkl {

/// ln Gamma(x) for x > 0. Lanczos approximation (g = 607/128, 15 terms).
double gamma_ln(double x);

/// Gamma(x) on the whole real line except the poles 0, -1, -2, ...
double gamma_fn(double x);

/// Normalized Bessel function j_lambda(t) = 2^lambda Gamma(lambda+1) t^-lambda J_lambda(t).
///
/// Power series for t <= bessel_switch_point(lambda), Hankel asymptotic
/// expansion beyond. j_lambda(0) = 1.
double bessel_j_normalized(double lambda, double t);

/// Argument at which bessel_j_normalized switches from series to asymptotics.
double bessel_switch_point(double lambda);

/// The two branches of bessel_j_normalized, exposed for overlap checks.
double bessel_j_series(double lambda, double t);
double bessel_j_asymptotic(double lambda, double t);

/// Normalized modified Bessel function i_lambda(t) = 2^lambda Gamma(lambda+1) t^-lambda I_lambda(t).
double bessel_i_normalized(double lambda, double t);

/// e^{-t} i_lambda(t); finite for every t >= 0.
double bessel_i_scaled(double lambda, double t);

/// Gauss's summation 2F1(a,b;c;1) = Gamma(c)Gamma(c-a-b) / (Gamma(c-a)Gamma(c-b)).
/// Throws PoleError when c is a non-positive integer and DivergenceError when c <= a+b.
double hyp2f1_at_one(double a, double b, double c);

/// Regularized incomplete Beta function I_x(a, b), a, b > 0, x in [0, 1].
double beta_inc_regularized(double a, double b, double x);

struct QuadratureRule {
  enum class Kind { angular_jacobi, radial_legendre_panel, jacobi };

  Kind kind = Kind::jacobi;
  std::size_t order = 0;
  /// Strictly increasing, inside the open interval (-1, 1) for the
  /// angular rule (the variable is u = cos(phi)).
  std::vector<double> nodes;
  std::vector<double> weights;

  /// Sum of weights[i] * f(nodes[i]).
  template <class F>
  double apply(F&& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

/// n-point Gauss-Jacobi rule on [-1, 1] for weight (1-u)^a (1+u)^b, a, b > -1.
QuadratureRule gauss_jacobi(std::size_t n, double a, double b);

/// n-point Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(std::size_t n);

/// Rule for integrals of g(cos phi) sin^{2 lambda}(phi) over [0, pi], written
/// in u = cos(phi): weight (1-u^2)^{lambda - 1/2} on [-1, 1]. Exact for
/// polynomials in u of degree <= 2n - 1.
QuadratureRule make_angular_rule(double lambda, std::size_t n);

/// Integral of sin^{2 lambda}(phi) over [0, pi] = sqrt(pi) Gamma(lambda+1/2) / Gamma(lambda+1).
double angular_mass(double lambda);

}  // namespace dunkl
