#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "casimir/asymptotics.hpp"
#include "casimir/common.hpp"

namespace casimir {

struct CurvePoint {
  double abscissa_nm;
  double energy_ev;
  bool converged = true;
};

//! Sampled energy curve on a strictly increasing (log-spaced) abscissa grid.
struct Curve {
  std::vector<CurvePoint> points;

  void validate() const {
    if (points.size() < 3) throw std::invalid_argument("Curve: >= 3 points required for slopes");
    for (size_t i = 0; i + 1 < points.size(); ++i)
      if (!(points[i].abscissa_nm < points[i + 1].abscissa_nm))
        throw std::invalid_argument("Curve: abscissas must be strictly increasing");
    for (const auto& p : points)
      if (!(p.energy_ev < 0.0)) throw std::invalid_argument("Curve: energies must be negative");
  }
};

struct SlopePoint {
  double abscissa_nm;
  double slope;
};

struct SlopeCurve {
  std::vector<SlopePoint> points;
  bool monotonic = true;  // |E| strictly decreasing along the curve
};

//! Logarithmic slope nu = -d ln|E| / d ln L by central differences on the
//! log-log grid; one-sided at the endpoints.  Non-monotonic |E| is flagged.
inline SlopeCurve slope_nu(const Curve& curve) {
  curve.validate();
  const auto& p = curve.points;
  const size_t n = p.size();
  std::vector<double> ll(n), le(n);
  for (size_t i = 0; i < n; ++i) {
    ll[i] = std::log(p[i].abscissa_nm);
    le[i] = std::log(-p[i].energy_ev);
  }
  SlopeCurve out;
  for (size_t i = 0; i + 1 < n; ++i)
    if (le[i + 1] >= le[i]) out.monotonic = false;
  out.points.resize(n);
  for (size_t i = 0; i < n; ++i) {
    size_t a = (i == 0) ? 0 : i - 1;
    size_t b = (i + 1 == n) ? i : i + 1;
    out.points[i] = {p[i].abscissa_nm, -(le[b] - le[a]) / (ll[b] - ll[a])};
  }
  return out;
}

//! Radius slope mu = d ln|E| / d ln R at fixed L, two-sided with a 5%
//! multiplicative step.  The energy provider must return E(R, L) in eV.
inline double slope_mu(const std::function<double(double, double)>& energy_ev, double radius_nm,
                       double gap_nm, double log_step = 0.05) {
  if (!(log_step > 0.0)) throw std::invalid_argument("slope_mu: log_step > 0 required");
  double ep = energy_ev(radius_nm * std::exp(log_step), gap_nm);
  double em = energy_ev(radius_nm * std::exp(-log_step), gap_nm);
  if (!(ep < 0.0 && em < 0.0)) throw NumericalError("slope_mu: energies must be negative");
  return (std::log(-ep) - std::log(-em)) / (2.0 * log_step);
}

struct RatioPoint {
  double gap_nm;
  double e_over_cp_bar;
  double e_over_vdw_bar;
};

//! Ratios of an exact-energy curve to the pairwise-summation references at
//! the same (R, L).
inline std::vector<RatioPoint> ratio_curves(const Curve& exact, const Coefficients& coeff,
                                            double radius_nm) {
  exact.validate();
  std::vector<RatioPoint> out;
  out.reserve(exact.points.size());
  for (const auto& p : exact.points) {
    HamakerEnergies h = hamaker_energies(coeff, radius_nm, p.abscissa_nm);
    out.push_back({p.abscissa_nm, p.energy_ev / h.e_cp_bar_ev, p.energy_ev / h.e_vdw_bar_ev});
  }
  return out;
}

}  // namespace casimir
