#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace casimir {

// The single hard-coded physical constant; every energy in eV derives from it.
inline constexpr double hbar_c_ev_nm = 197.327;

inline constexpr double pi = 3.14159265358979323846;

// Thrown when a quadrature or series fails to reach its tolerance.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a recurrence or factorization produces values outside the
// representable / physically admissible range.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Signed log-magnitude scalar.  The multipole machinery routinely meets
// intermediates like exp(+-2000), so products are formed in log space and
// exponentiated only once per assembled term.
struct LogVal {
  double log_abs = -std::numeric_limits<double>::infinity();
  int sign = 0;  // -1, 0, +1

  static LogVal zero() { return {}; }

  static LogVal from(double v) {
    if (v == 0.0) return {};
    return {std::log(std::abs(v)), v > 0.0 ? 1 : -1};
  }

  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }

  LogVal operator*(const LogVal& o) const {
    if (sign == 0 || o.sign == 0) return {};
    return {log_abs + o.log_abs, sign * o.sign};
  }

  LogVal operator/(const LogVal& o) const {
    if (o.sign == 0) throw NumericalError("LogVal: division by zero");
    if (sign == 0) return {};
    return {log_abs - o.log_abs, sign * o.sign};
  }
};

// log(exp(a) + exp(b)) for magnitudes of same-sign terms.
inline double log_add(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  double hi = a > b ? a : b;
  double lo = a > b ? b : a;
  return hi + std::log1p(std::exp(lo - hi));
}

// exp(a) - exp(b) as a signed log value; the usual catastrophic case
// (a close to b) keeps full precision through log1p/expm1.
inline LogVal log_sub(double a, double b) {
  if (a == b) return LogVal::zero();
  if (a > b) return {a + std::log1p(-std::exp(b - a)), 1};
  return {b + std::log1p(-std::exp(a - b)), -1};
}

inline bool finite(double v) { return std::isfinite(v); }

}  // namespace casimir
