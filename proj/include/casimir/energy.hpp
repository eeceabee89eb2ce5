#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "casimir/common.hpp"
#include "casimir/geometry.hpp"
#include "casimir/materials.hpp"
#include "casimir/quadrature.hpp"
#include "casimir/roundtrip.hpp"
#include "casimir/threads.hpp"

namespace casimir {

//! Numerical policy for the scattering-formula energy.
//! ell_max = 0 selects the automatic truncation policy
//! max(10, ceil(8 R/L) + 10) capped at 100.
struct NumericsSpec {
  int ell_max = 0;
  double m_rel_cutoff = 1e-6;   // m-sum tail criterion
  int xi_nodes = 60;            // frequency quadrature
  int x_nodes = 120;            // kappa quadrature
  double target_rel_err = 1e-3;
  bool refine = true;           // fill convergence metadata by refinement

  void validate() const {
    if (ell_max < 0) throw std::invalid_argument("NumericsSpec: ell_max >= 0 required");
    if (!(m_rel_cutoff > 0.0 && m_rel_cutoff < 1.0))
      throw std::invalid_argument("NumericsSpec: m_rel_cutoff in (0,1) required");
    if (xi_nodes < 2 || x_nodes < 2) throw std::invalid_argument("NumericsSpec: node counts >= 2");
    if (!(target_rel_err > 0.0 && target_rel_err < 1.0))
      throw std::invalid_argument("NumericsSpec: target_rel_err in (0,1) required");
  }
};

inline int ell_max_policy(const Geometry& g) {
  int l = static_cast<int>(std::ceil(8.0 * g.radius_nm / g.gap_nm)) + 10;
  return std::min(100, std::max(10, l));
}

struct EnergyResult {
  double energy_ev = 0.0;
  double energy_natural = 0.0;  // units of hbar c / nm
  int lmax_used = 0;
  int m_used = 0;               // largest m index summed, over all nodes
  int nodes_used = 0;           // frequency nodes
  int x_nodes_used = 0;
  double rel_err_estimate = 0.0;
  bool converged = true;
};

//! ln det(I - M) for one balanced block, by pivoted LU with log-magnitude
//! accumulation.  Signals if the pivot product is not positive (spectral
//! radius >= 1 or factorization breakdown).
inline double log_det_contribution(const RoundTripBlock& block) {
  const int n = block.size();
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n) - block.matrix;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  double log_abs = 0.0;
  int sign = lu.permutationP().determinant() > 0 ? 1 : -1;
  for (int i = 0; i < n; ++i) {
    double u = lu.matrixLU()(i, i);
    if (u == 0.0 || !finite(u)) throw NumericalError("log_det_contribution: singular pivot");
    if (u < 0.0) sign = -sign;
    log_abs += std::log(std::abs(u));
  }
  if (sign <= 0)
    throw NumericalError("log_det_contribution: det(I-M) <= 0, spectral radius >= 1?");
  return log_abs;
}

namespace detail {

// Primed m-sum of ln det(I - M^(m)) at one frequency node; the m = 0 term
// carries weight 1/2.  Truncates once a term drops below the relative cutoff
// twice in a row.
template <typename Term>
inline double primed_m_sum(int ell_max, double cutoff, int& m_used, Term term) {
  double sum = 0.0;
  int consecutive_small = 0;
  for (int m = 0; m <= ell_max; ++m) {
    double v = term(m);
    sum += (m == 0) ? 0.5 * v : v;
    m_used = std::max(m_used, m);
    if (std::abs(v) < cutoff * std::abs(sum)) {
      if (++consecutive_small >= 2) break;
    } else {
      consecutive_small = 0;
    }
  }
  return sum;
}

struct XiIntegral {
  double value;     // Integral dxi Sum'_m f(m, xi)
  int m_used;
};

// Frequency integral of the primed m-sum; nodes are processed independently
// (optionally in parallel) and reduced in node order, so the result is
// bit-identical for any worker count.
template <typename NodeTerm>
inline XiIntegral xi_integral(const Geometry& geom, const NumericsSpec& num, int workers,
                              NodeTerm node_term) {
  FrequencyRule rule(num.xi_nodes, 1.0 / geom.script_l());
  const int n = num.xi_nodes;
  std::vector<double> vals(n);
  std::vector<int> ms(n, 0);
  parallel_for(n, workers, [&](int i) { vals[i] = node_term(rule.xi[i], ms[i]); });
  XiIntegral out{0.0, 0};
  for (int i = 0; i < n; ++i) {
    out.value += rule.w[i] * vals[i];
    out.m_used = std::max(out.m_used, ms[i]);
  }
  return out;
}

enum class EnergyKind { exact, perturbative };

inline EnergyResult energy_once(const Geometry& geom, const MaterialModel& plane,
                                const MaterialModel& sphere, const NumericsSpec& num,
                                EnergyKind kind, int workers) {
  const int lmax = num.ell_max > 0 ? num.ell_max : ell_max_policy(geom);
  XiIntegral xi = xi_integral(geom, num, workers, [&](double xi_hat, int& m_used) {
    BlockAssembler assembler(geom, plane, sphere, xi_hat, lmax, QuadratureSpec{num.x_nodes});
    return primed_m_sum(lmax, num.m_rel_cutoff, m_used, [&](int m) {
      if (kind == EnergyKind::exact) return log_det_contribution(assembler.block(m));
      return -assembler.block_trace(m);
    });
  });
  EnergyResult r;
  r.energy_natural = xi.value / pi;
  r.energy_ev = hbar_c_ev_nm * r.energy_natural;
  r.lmax_used = lmax;
  r.m_used = xi.m_used;
  r.nodes_used = num.xi_nodes;
  r.x_nodes_used = num.x_nodes;
  return r;
}

}  // namespace detail

//! Exact Casimir energy E = (hbar c / pi) Int dxi Sum'_m ln det(I - M^(m)).
//! With refine = true, a doubled-resolution pass (xi and x nodes, ell_max)
//! fills rel_err_estimate and the converged flag; the base-resolution value
//! is always the one reported.
inline EnergyResult casimir_energy_exact(const Geometry& geom, const MaterialModel& plane,
                                         const MaterialModel& sphere, const NumericsSpec& num,
                                         int workers = 1) {
  num.validate();
  EnergyResult r = detail::energy_once(geom, plane, sphere, num, detail::EnergyKind::exact, workers);
  if (num.refine) {
    NumericsSpec fine = num;
    fine.refine = false;
    fine.xi_nodes *= 2;
    fine.x_nodes *= 2;
    fine.ell_max = std::min((r.lmax_used * 3) / 2 + 1, 150);
    EnergyResult f =
        detail::energy_once(geom, plane, sphere, fine, detail::EnergyKind::exact, workers);
    r.rel_err_estimate = std::abs(f.energy_ev - r.energy_ev) / std::abs(f.energy_ev);
    r.converged = r.rel_err_estimate <= num.target_rel_err;
  }
  return r;
}

//! Single-round-trip (perturbative) energy: ln det(I - M) replaced by -tr M.
inline EnergyResult casimir_energy_perturbative(const Geometry& geom, const MaterialModel& plane,
                                                const MaterialModel& sphere,
                                                const NumericsSpec& num, int workers = 1) {
  num.validate();
  EnergyResult r =
      detail::energy_once(geom, plane, sphere, num, detail::EnergyKind::perturbative, workers);
  if (num.refine) {
    NumericsSpec fine = num;
    fine.refine = false;
    fine.xi_nodes *= 2;
    fine.x_nodes *= 2;
    fine.ell_max = std::min((r.lmax_used * 3) / 2 + 1, 150);
    EnergyResult f =
        detail::energy_once(geom, plane, sphere, fine, detail::EnergyKind::perturbative, workers);
    r.rel_err_estimate = std::abs(f.energy_ev - r.energy_ev) / std::abs(f.energy_ev);
    r.converged = r.rel_err_estimate <= num.target_rel_err;
  }
  return r;
}

}  // namespace casimir
