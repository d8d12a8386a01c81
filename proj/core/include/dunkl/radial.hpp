#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "dunkl/params.hpp"

namespace dunkl {

class RadialGrid;
using GridPtr = std::shared_ptr<const RadialGrid>;

/// Nodes uniformly spaced in u = ln r. Integrals use the trapezoid rule in u,
/// so dnu weights are h (halved at both ends).
class RadialGrid {
 public:
  static constexpr double kDefaultRmin = 1e-6;
  static constexpr double kDefaultRmax = 1e6;
  static constexpr std::size_t kDefaultSize = 4096;

  /// n nodes from rmin to rmax inclusive.
  static GridPtr log_spaced(double rmin, double rmax, std::size_t n);

  /// Nodes exp(k h) for every integer k with rmin <= exp(k h) <= rmax (ends
  /// rounded outward). Jumps at r = exp(m h) land exactly on nodes.
  static GridPtr lattice(double h, double rmin, double rmax);

  static GridPtr default_grid() { return log_spaced(kDefaultRmin, kDefaultRmax, kDefaultSize); }

  [[nodiscard]] std::size_t size() const { return r_.size(); }
  [[nodiscard]] double h() const { return h_; }
  [[nodiscard]] double u(std::size_t i) const { return u0_ + static_cast<double>(i) * h_; }
  [[nodiscard]] double r(std::size_t i) const { return r_[i]; }
  [[nodiscard]] double u_min() const { return u0_; }
  [[nodiscard]] double u_max() const { return u(size() - 1); }
  [[nodiscard]] double rmin() const { return r_.front(); }
  [[nodiscard]] double rmax() const { return r_.back(); }
  [[nodiscard]] const std::vector<double>& nodes() const { return r_; }

  /// Trapezoid weights for dnu(r) = dr / r.
  [[nodiscard]] const std::vector<double>& nu_weights() const { return w_nu_; }
  /// Weights for dnu_lambda(r) = b_lambda r^{2 lambda + 1} dr.
  [[nodiscard]] std::vector<double> nu_lambda_weights(const DunklParams& params) const;

  /// Continuous node index of r (may be fractional or out of range).
  [[nodiscard]] double position(double r) const;

  /// Same step h (relative 1e-12).
  [[nodiscard]] bool same_step(const RadialGrid& other) const;

 private:
  RadialGrid(double u0, double h, std::size_t n);

  double u0_;
  double h_;
  std::vector<double> r_;
  std::vector<double> w_nu_;
};

struct GaussianTag {
  double a = 0.5;  // amp * exp(-a r^2)
  double amp = 1.0;
};

struct IndicatorTag {
  double R = 1.0;  // amp * chi_[0, R]
  double amp = 1.0;
};

struct LogIndicatorTag {
  double lo = 1.0;  // amp * r^power * chi_[lo, hi]; lo may be 0, hi may be +inf
  double hi = 2.718281828459045;
  double amp = 1.0;
  double power = 0.0;
};

struct PowerTag {
  double s = 0.0;  // amp * r^s
  double amp = 1.0;
};

using AnalyticTag = std::variant<std::monostate, GaussianTag, IndicatorTag, LogIndicatorTag, PowerTag>;

/// Exact value of a tagged profile at r; jump points take the mean of the one-sided limits.
double tag_value(const AnalyticTag& tag, double r);

/// Sample value used on a grid node. Smooth tags give the pointwise value;
/// jumps use the fraction of the node's log-cell [u - h/2, u + h/2] inside the
/// support, which is 1/2 for a jump sitting on a node.
double tag_sample(const AnalyticTag& tag, const RadialGrid& grid, std::size_t i);

/// Discontinuities of the tag in u = ln r (empty for smooth tags).
std::vector<double> tag_breaks(const AnalyticTag& tag);

/// Short human-readable name ("gaussian", "indicator", ...), "none" if untagged.
std::string tag_name(const AnalyticTag& tag);

class RadialFunction {
 public:
  /// Samples must be finite. If a tag is present, samples must match it to 1e-12.
  RadialFunction(GridPtr grid, std::vector<double> samples, AnalyticTag tag = {});

  static RadialFunction from_tag(GridPtr grid, const AnalyticTag& tag);
  static RadialFunction from_function(GridPtr grid, const std::function<double(double)>& f);

  [[nodiscard]] const RadialGrid& grid() const { return *grid_; }
  [[nodiscard]] const GridPtr& grid_ptr() const { return grid_; }
  [[nodiscard]] const std::vector<double>& samples() const { return samples_; }
  [[nodiscard]] double operator[](std::size_t i) const { return samples_[i]; }
  [[nodiscard]] std::size_t size() const { return samples_.size(); }
  [[nodiscard]] const AnalyticTag& tag() const { return tag_; }
  [[nodiscard]] bool tagged() const { return !std::holds_alternative<std::monostate>(tag_); }

  /// Tag formula when tagged, else linear interpolation in (ln r, f).
  /// Zero outside the grid.
  [[nodiscard]] double at(double r) const;
  /// Tag formula when tagged, else 6-point Lagrange interpolation in ln r.
  [[nodiscard]] double at_smooth(double r) const;

  [[nodiscard]] const std::vector<std::string>& warnings() const { return warnings_; }
  void add_warning(std::string w) { warnings_.push_back(std::move(w)); }

  /// c * f, keeping the tag.
  [[nodiscard]] RadialFunction scaled(double c) const;
  /// |f|, keeping the tag when it is nonnegative.
  [[nodiscard]] RadialFunction abs() const;
  [[nodiscard]] double max_abs() const;

 private:
  GridPtr grid_;
  std::vector<double> samples_;
  AnalyticTag tag_;
  std::vector<std::string> warnings_;
};

/// Integral of F(u) = f(e^u) k(u) du over the grid span. Tagged profiles are
/// integrated cell by cell with Gauss-Legendre, split at the tag's jumps and at
/// the extra breakpoints (kinks of k); untagged profiles use the trapezoid rule.
double integrate_u(const RadialFunction& f, const std::function<double(double)>& k,
                   const std::vector<double>& kinks = {});

/// Integral of f against dnu over the grid span.
double integrate_nu(const RadialFunction& f);

/// Integral of f against dnu_lambda over [0, rmax]; the piece [0, rmin] uses f(rmin).
double integrate_nu_lambda(const RadialFunction& f, const DunklParams& params);

/// (f * g)(r) = int f(r/t) g(t) dnu(t) on f's grid. g's grid must have the same step.
RadialFunction mellin_convolve(const RadialFunction& f, const RadialFunction& g);

struct NormValue {
  double value = 0.0;
  bool truncated = false;  // integrand not negligible at a grid edge
  std::string warning;
};

/// (int |f|^p r^{w p} dnu_lambda)^{1/p}.
NormValue weighted_lp_norm(const RadialFunction& f, double p, double weight_exponent, const DunklParams& params);

/// (int |f|^p dnu)^{1/p}.
NormValue lp_norm_nu(const RadialFunction& f, double p);

/// C(r_i) = int_0^{r_i} f dnu_lambda at every node (head [0, rmin] included).
std::vector<double> cumulative_nu_lambda(const RadialFunction& f, const DunklParams& params);

void write_csv(std::ostream& os, const std::vector<double>& r, const std::vector<double>& values);
void write_csv(std::ostream& os, const RadialFunction& f);

struct CsvTable {
  std::vector<double> r;
  std::vector<double> value;
};

/// Reads a two-column table with header `r,value`.
CsvTable read_csv(std::istream& is);

/// Builds a profile from a table. Rows with r = 0 are dropped. Log-uniform
/// nodes are used as is; otherwise the table is resampled onto a log grid with
/// the same span and size (warning attached).
RadialFunction function_from_table(const CsvTable& table);

}  // namespace dunkl
