#pragma once

#include <cmath>
#include <vector>

#include "casimir/common.hpp"

namespace casimir {

// Log-space tables of the modified spherical Riccati functions
//   S_l(z) = z i_l(z)   (regular,   S, S' > 0)
//   C_l(z) = z k_l(z)   (decaying,  C > 0, C' < 0)
// for l = 0..lmax at fixed z > 0.  The regular family is built from the
// ratio continued fraction (downward-stable); the irregular family from the
// upward recurrence, which is dominant and therefore stable.  Everything is
// kept as log magnitudes: for large l or z the raw values leave the double
// range long before the physically meaningful combinations do.
struct RiccatiTables {
  int lmax;
  double z;
  std::vector<double> log_s;        // log S_l
  std::vector<double> log_sp;       // log S_l'
  std::vector<double> log_c;        // log C_l
  std::vector<double> log_cp_abs;   // log |C_l'|,  C_l' < 0
};

inline RiccatiTables riccati_tables(double z, int lmax) {
  if (!(z > 0.0)) throw std::invalid_argument("riccati_tables: z > 0 required");
  if (lmax < 0) throw std::invalid_argument("riccati_tables: lmax >= 0 required");
  if (lmax > 1000) throw NumericalError("riccati_tables: lmax beyond stability budget (1000)");

  RiccatiTables t;
  t.lmax = lmax;
  t.z = z;
  const int n = lmax + 1;

  // --- irregular family: k_l upward, rescaled against overflow ---
  // k_0 = (pi/2z) e^{-z}, k_1 = k_0 (1 + 1/z), k_{l+1} = k_{l-1} + (2l+1)/z k_l
  std::vector<double> log_k(n + 1);
  {
    double base = std::log(pi / (2.0 * z)) - z;
    double a = 1.0, b = 1.0 + 1.0 / z;
    double off = 0.0;
    log_k[0] = base;
    if (n + 1 > 1) log_k[1] = base + std::log(b);
    for (int l = 1; l + 1 <= n; ++l) {
      double c = a + (2 * l + 1) / z * b;
      a = b;
      b = c;
      if (b > 1e250) {
        a *= 1e-250;
        b *= 1e-250;
        off += std::log(1e250);
      }
      log_k[l + 1] = base + std::log(b) + off;
    }
  }

  // --- regular family: ratios r_l = i_l / i_{l-1} ---
  // 1/r_l = (2l+1)/z + r_{l+1}; seed r_{lmax+1} by the Lentz continued
  // fraction, then fill downward.
  std::vector<double> ratio(n + 1);
  {
    const int l0 = lmax + 1;
    const double tiny = 1e-300;
    double f = tiny, C = tiny, D = 0.0;
    long max_iter = 2000 + static_cast<long>(12.0 * z);
    bool ok = false;
    for (long j = 0; j < max_iter; ++j) {
      double bj = (2.0 * (l0 + j) + 1.0) / z;
      D = bj + D;
      if (D == 0.0) D = tiny;
      C = bj + 1.0 / C;
      if (C == 0.0) C = tiny;
      D = 1.0 / D;
      double delta = C * D;
      f *= delta;
      if (std::abs(delta - 1.0) < 1e-16) {
        ok = true;
        break;
      }
    }
    if (!ok) throw ConvergenceError("riccati_tables: ratio continued fraction did not converge");
    ratio[l0] = f;
    for (int l = l0 - 1; l >= 1; --l) ratio[l] = 1.0 / ((2.0 * l + 1.0) / z + ratio[l + 1]);
  }

  // log i_0 = log(sinh z / z), written to survive both z -> 0 and z -> inf
  std::vector<double> log_i(n + 1);
  log_i[0] = (z > 1e-4) ? z + std::log1p(-std::exp(-2.0 * z)) - std::log(2.0 * z)
                        : std::log1p(z * z / 6.0 * (1.0 + z * z / 20.0));
  for (int l = 1; l <= n; ++l) log_i[l] = log_i[l - 1] + std::log(ratio[l]);

  t.log_s.resize(n);
  t.log_sp.resize(n);
  t.log_c.resize(n);
  t.log_cp_abs.resize(n);
  const double log_z = std::log(z);
  for (int l = 0; l < n; ++l) {
    t.log_s[l] = log_z + log_i[l];
    t.log_c[l] = log_z + log_k[l];
    if (l == 0) {
      // S_0' = cosh z, C_0' = -(pi/2) e^{-z}
      t.log_sp[0] = (z > 1e-4) ? z + std::log1p(std::exp(-2.0 * z)) - std::log(2.0)
                               : std::log(std::cosh(z));
      t.log_cp_abs[0] = std::log(pi / 2.0) - z;
    } else {
      // S_l' = i_{l-1} (z - l r_l): the bracket stays positive, no cancellation
      double bracket = z - l * ratio[l];
      if (!(bracket > 0.0)) throw NumericalError("riccati_tables: non-positive S' bracket");
      t.log_sp[l] = log_i[l - 1] + std::log(bracket);
      // |C_l'| = z k_{l-1} + l k_l
      t.log_cp_abs[l] = log_add(log_z + log_k[l - 1], std::log(static_cast<double>(l)) + log_k[l]);
    }
    if (!finite(t.log_s[l]) || !finite(t.log_c[l]))
      throw NumericalError("riccati_tables: non-finite log value");
  }
  return t;
}

}  // namespace casimir
