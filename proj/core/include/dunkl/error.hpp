#pragma once

#include <stdexcept>
#include <string>

namespace dunkl {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent configuration (grids, parameter sets, empty inputs).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Non-finite or otherwise unusable sample data.
class DataError : public Error {
 public:
  using Error::Error;
};

/// A series or integral that does not converge for the given arguments.
class DivergenceError : public Error {
 public:
  enum class Where { origin, infinity, series };

  DivergenceError(Where where, const std::string& what)
      : Error(what), where_(where) {}

  [[nodiscard]] Where where() const noexcept { return where_; }

 private:
  Where where_;
};

/// Argument sits on a pole of a Gamma quotient.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Hypotheses of the weighted inequalities, named so that callers can branch on them.
enum class Condition {
  p_range,         // 1 < p < inf (strong), p = 1 (weak), 1 <= p <= inf (Hardy/Bellman)
  q_range,         // p <= q < inf, and q > 1 when p = 1
  q_equals_p,      // sharp Stein-Weiss constant needs q = p
  alpha_range,     // 0 < alpha < d_k
  gamma_bound,     // gamma < d_k/q
  beta_bound,      // beta < d_k/p' (strong) or beta <= 0 (weak)
  gamma_beta_sum,  // gamma + beta >= 0
  balance,         // alpha - gamma - beta = d_k (1/p - 1/q)
  hardy_order,     // a/p' > b/p (Hardy) or a/p' < b/p (Bellman)
  hardy_sum,       // a + b = d_k
};

/// Short identifier, e.g. "balance".
const char* condition_name(Condition c);

/// Parameters violate a hypothesis of an inequality; `condition()` names which.
class InadmissibleError : public Error {
 public:
  InadmissibleError(Condition c, const std::string& what) : Error(what), condition_(c) {}

  [[nodiscard]] Condition condition() const noexcept { return condition_; }

 private:
  Condition condition_;
};

}  // namespace dunkl
