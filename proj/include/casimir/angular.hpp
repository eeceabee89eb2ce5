#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "casimir/common.hpp"

namespace casimir {

//! Continued, normalized Mie angular functions at x = kappa/xi_hat >= 1:
//!   pi~_lm(x)  = Lambda_lm m P_l^m(x) / sqrt(x^2-1)
//!   tau~_lm(x) = Lambda_lm sqrt(x^2-1) dP_l^m/dx
//! with Lambda_lm = sqrt((2l+1)(l-m)! / (l(l+1)(l+m)!)).  The normalization
//! is pinned so the l = 1 round-trip elements reduce to the point-dipole
//! integrals exactly.
struct AngularFunctions {
  double pi_tilde;
  double tau_tilde;
};

namespace detail {

inline double log_lambda(int ell, int m) {
  return 0.5 * (std::log(2.0 * ell + 1.0) + std::lgamma(ell - m + 1.0) -
                std::log(static_cast<double>(ell) * (ell + 1.0)) - std::lgamma(ell + m + 1.0));
}

}  // namespace detail

// Log-magnitude tables of pi~ and tau~ over l = lmin..lmax for fixed (m, x),
// in the positive-P convention: P_l^m(x) = (x^2-1)^{m/2} d^m P_l/dx^m > 0
// for x > 1, so both families are positive and the upward l-recurrence only
// needs a rescale guard.  The Condon-Shortley phase would multiply every
// entry of a fixed-m block by the same sign and cancels from all round-trip
// bilinears; the signed public evaluator below keeps it for direct callers.
struct AngularTables {
  int m;
  int lmin;
  int lmax;
  std::vector<double> log_pi;   // index l - lmin; -inf for m = 0
  std::vector<double> log_tau;  // index l - lmin
};

inline AngularTables angular_tables(int m, int lmax, double x) {
  if (m < 0) throw std::invalid_argument("angular_tables: m >= 0 required");
  if (!(x > 1.0)) throw std::invalid_argument("angular_tables: x > 1 required");
  if (lmax > 1000) throw NumericalError("angular_tables: lmax beyond stability budget");
  AngularTables t;
  t.m = m;
  t.lmin = std::max(1, m);
  t.lmax = lmax;
  const int nl = lmax - t.lmin + 1;
  if (nl <= 0) throw std::invalid_argument("angular_tables: lmax < max(1, m)");
  t.log_pi.assign(nl, -std::numeric_limits<double>::infinity());
  t.log_tau.assign(nl, -std::numeric_limits<double>::infinity());

  const double u2 = x * x - 1.0;
  const double log_u = 0.5 * std::log(u2);

  // log P_l^m for l = m..lmax by the upward recurrence
  //   (l-m) P_l = (2l-1) x P_{l-1} - (l+m-1) P_{l-2},
  // seeded at log P_m^m = log (2m-1)!! + m log u; values only grow for
  // x > 1, so a periodic rescale against overflow suffices.
  std::vector<double> log_p(lmax + 1, -std::numeric_limits<double>::infinity());
  double off = (m > 0) ? std::lgamma(2.0 * m + 1.0) - m * std::log(2.0) -
                             std::lgamma(m + 1.0) + m * log_u
                       : 0.0;
  double pa = 1.0;                  // P_{m}^m   / exp(off)
  double pb = x * (2.0 * m + 1.0);  // P_{m+1}^m / exp(off)
  log_p[m] = off;
  if (m + 1 <= lmax) log_p[m + 1] = off + std::log(pb);
  for (int l = m + 2; l <= lmax; ++l) {
    double pc = ((2.0 * l - 1.0) * x * pb - (l + m - 1.0) * pa) / (l - m);
    pa = pb;
    pb = pc;
    if (pb > 1e250) {
      pa *= 1e-250;
      pb *= 1e-250;
      off += std::log(1e250);
    }
    log_p[l] = off + std::log(pb);
  }

  const double log_m = (m > 0) ? std::log(static_cast<double>(m)) : 0.0;
  for (int l = t.lmin; l <= lmax; ++l) {
    double lam = detail::log_lambda(l, m);
    int i = l - t.lmin;
    if (m > 0) t.log_pi[i] = lam + log_m + log_p[l] - log_u;
    // sqrt(x^2-1) dP_l^m/dx = (l x P_l^m - (l+m) P_{l-1}^m) / sqrt(x^2-1);
    // P_{m-1}^m = 0, and for l > m the difference keeps the sign of the
    // first term (P_l^m / P_{l-1}^m > (l+m)/(l x) holds for x > 1).
    if (l - 1 >= m) {
      double t1 = std::log(l * x) + log_p[l];
      double t2 = std::log(static_cast<double>(l + m)) + log_p[l - 1];
      LogVal d = log_sub(t1, t2);
      if (d.sign <= 0) throw NumericalError("angular_tables: tau recurrence lost positivity");
      t.log_tau[i] = lam + d.log_abs - log_u;
    } else {
      t.log_tau[i] = lam + std::log(l * x) + log_p[l] - log_u;
    }
    if (std::isnan(t.log_tau[i])) throw NumericalError("angular_tables: non-finite tau");
  }
  return t;
}

//! Signed single-point evaluation (Condon-Shortley continuation, so e.g.
//! P_1^1(x) = -sqrt(x^2-1)).  Handles the x -> 1 limits analytically:
//! both functions vanish there except for m = 1, where
//! pi~ = tau~ = -Lambda_l1 l(l+1)/2.
inline AngularFunctions angular_functions(int ell, int m, double x) {
  if (m < 0 || m > ell || ell < 1)
    throw std::invalid_argument("angular_functions: need 0 <= m <= ell, ell >= 1");
  if (!(x >= 1.0)) throw std::invalid_argument("angular_functions: x >= 1 required");
  if (x == 1.0) {
    if (m == 1) {
      double v = -std::exp(detail::log_lambda(ell, 1)) * 0.5 * ell * (ell + 1.0);
      return {v, v};
    }
    return {0.0, 0.0};
  }
  AngularTables t = angular_tables(m, ell, x);
  int i = ell - t.lmin;
  double cs = (m % 2 == 0) ? 1.0 : -1.0;
  double lp = t.log_pi[i], lt = t.log_tau[i];
  if ((std::isfinite(lp) && lp > 700.0) || lt > 700.0)
    throw NumericalError("angular_functions: value exceeds double range; use angular_tables");
  double pi_t = (m == 0) ? 0.0 : cs * std::exp(lp);
  return {pi_t, cs * std::exp(lt)};
}

}  // namespace casimir
