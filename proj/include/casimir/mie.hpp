#pragma once

#include <cmath>
#include <vector>

#include "casimir/bessel.hpp"
#include "casimir/common.hpp"
#include "casimir/materials.hpp"

namespace casimir {

//! Mie reflection amplitudes of a homogeneous sphere at imaginary frequency.
//! Both are real; a_l = b_l = 0 exactly for eps = 1.
struct MieAmplitude {
  int ell;
  double a;
  double b;
};

struct MieAmplitudeLog {
  int ell;
  LogVal a;
  LogVal b;
};

//! Exact amplitudes for l = 1..ell_max at size parameter s = xi_hat * R,
//! as signed log magnitudes.  With n = sqrt(eps) and the modified Riccati
//! functions S, C:
//!   a_l = (-1)^{l+1} (pi/2) [n S_l(ns) S_l'(s) - S_l(s) S_l'(ns)]
//!                         / [n S_l(ns) C_l'(s) - C_l(s) S_l'(ns)]
//! and b_l likewise with the factor n moved to the other terms.  The
//! denominators are sums of one sign, so only the numerators subtract.
inline std::vector<MieAmplitudeLog> mie_amplitudes_log(double eps, double size, int ell_max) {
  if (!(eps >= 1.0)) throw std::invalid_argument("mie_amplitudes: eps >= 1 required");
  if (!(size > 0.0)) throw std::invalid_argument("mie_amplitudes: size > 0 required");
  if (ell_max < 1) throw std::invalid_argument("mie_amplitudes: ell_max >= 1 required");

  std::vector<MieAmplitudeLog> out(ell_max);
  if (eps == 1.0) {
    for (int l = 1; l <= ell_max; ++l) out[l - 1] = {l, LogVal::zero(), LogVal::zero()};
    return out;
  }
  const double n = std::sqrt(eps);
  const double log_n = std::log(n);
  RiccatiTables t0 = riccati_tables(size, ell_max);
  RiccatiTables t1 = riccati_tables(n * size, ell_max);
  const double log_pi2 = std::log(pi / 2.0);

  for (int l = 1; l <= ell_max; ++l) {
    LogVal num_a = log_sub(log_n + t1.log_s[l] + t0.log_sp[l], t0.log_s[l] + t1.log_sp[l]);
    double den_a = log_add(log_n + t1.log_s[l] + t0.log_cp_abs[l], t0.log_c[l] + t1.log_sp[l]);
    LogVal num_b = log_sub(t1.log_s[l] + t0.log_sp[l], log_n + t0.log_s[l] + t1.log_sp[l]);
    double den_b = log_add(t1.log_s[l] + t0.log_cp_abs[l], log_n + t0.log_c[l] + t1.log_sp[l]);
    int par = (l % 2 == 0) ? -1 : +1;  // (-1)^{l+1}, times sign(-denominator) folded below
    // denominators are negative sums: sign = -1
    LogVal a{log_pi2 + num_a.log_abs - den_a, -par * num_a.sign};
    LogVal b{log_pi2 + num_b.log_abs - den_b, -par * num_b.sign};
    if (num_a.sign == 0) a = LogVal::zero();
    if (num_b.sign == 0) b = LogVal::zero();
    if (a.sign != 0 && !finite(a.log_abs)) throw NumericalError("mie_amplitudes: non-finite a_l");
    if (b.sign != 0 && !finite(b.log_abs)) throw NumericalError("mie_amplitudes: non-finite b_l");
    out[l - 1] = {l, a, b};
  }
  return out;
}

//! Exact amplitudes as plain doubles; signals overflow instead of returning inf.
inline std::vector<MieAmplitude> mie_amplitudes(double eps, double size, int ell_max) {
  auto logs = mie_amplitudes_log(eps, size, ell_max);
  std::vector<MieAmplitude> out(logs.size());
  for (size_t i = 0; i < logs.size(); ++i) {
    if ((logs[i].a.sign != 0 && logs[i].a.log_abs > 700.0) ||
        (logs[i].b.sign != 0 && logs[i].b.log_abs > 700.0))
      throw NumericalError("mie_amplitudes: amplitude exceeds double range; use log form");
    out[i] = {logs[i].ell, logs[i].a.value(), logs[i].b.value()};
  }
  return out;
}

//! Closed-form small-size asymptotics:
//!   a_l ~ (-1)^l     (l+1)/(l eps + l + 1) (eps-1) s^{2l+1} / ((2l+1)!!(2l-1)!!)
//!   b_l ~ (-1)^{l+1}                       (eps-1) s^{2l+3} / ((2l+3)!!(2l+1)!!)
inline MieAmplitude mie_small_radius(double eps, double size, int ell) {
  if (!(eps >= 1.0)) throw std::invalid_argument("mie_small_radius: eps >= 1 required");
  if (!(size >= 0.0)) throw std::invalid_argument("mie_small_radius: size >= 0 required");
  if (ell < 1) throw std::invalid_argument("mie_small_radius: ell >= 1 required");
  auto dfact = [](int k) {  // k!! for odd k
    double v = 1.0;
    for (int j = k; j >= 3; j -= 2) v *= j;
    return v;
  };
  double sa = (ell % 2 == 0) ? 1.0 : -1.0;
  double a = sa * (ell + 1.0) / (ell * eps + ell + 1.0) * (eps - 1.0) *
             std::pow(size, 2 * ell + 1) / (dfact(2 * ell + 1) * dfact(2 * ell - 1));
  double b = -sa * (eps - 1.0) * std::pow(size, 2 * ell + 3) /
             (dfact(2 * ell + 3) * dfact(2 * ell + 1));
  return {ell, a, b};
}

}  // namespace casimir
