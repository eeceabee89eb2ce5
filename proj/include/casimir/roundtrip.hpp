#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "casimir/angular.hpp"
#include "casimir/common.hpp"
#include "casimir/fresnel.hpp"
#include "casimir/geometry.hpp"
#include "casimir/materials.hpp"
#include "casimir/mie.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

struct QuadratureSpec {
  int x_nodes = 120;
};

//! One fixed-m block of the round-trip operator at one frequency node.
//! `matrix` holds the symmetrically balanced similarity transform of the
//! block (rows/columns scaled by sqrt|s_lP|), which shares its determinant
//! and spectrum with the raw operator while staying inside double range.
//! Row/column index = (l - ell_min) for P = E, then nl + (l - ell_min) for
//! P = M, with nl = ell_max - ell_min + 1.
struct RoundTripBlock {
  int m;
  int ell_min;
  int ell_max;
  double xi_hat;
  Eigen::MatrixXd matrix;

  int size() const { return static_cast<int>(matrix.rows()); }
};

// Assembles round-trip blocks for all m at one frequency.  The balanced
// element is
//
//   M~[(l,P),(l',P')] = sqrt(|s_lP| |s_l'P'|) * Integral_1^inf dx
//       e^{-2 xi script_L x} [ r_TM C^TM_lP C^TM_l'P' + |r_TE| C^TE_lP C^TE_l'P' ]
//
// with C^TM_E = tau~, C^TM_M = pi~, C^TE_E = pi~, C^TE_M = tau~ (positive-P
// convention), |s_lE| = |a_l|, |s_lM| = |b_l|, and r_TM >= 0 >= r_TE on the
// whole domain.  All entries are then nonnegative and the block is symmetric
// positive semidefinite, which keeps det(I - M) in (0, 1].
//
// Residual convention constants are frozen as follows: the normalization and
// the TE/TM weights are pinned by the l = 1 point-dipole elements
// (dipole_block_elements below reproduces the blocks to machine precision),
// and the uniform negative sign of the sphere amplitudes is pinned by the
// dilute-sphere pairwise limit, where alternating Bohren signs would cancel
// the attraction that the volume integral of the point energy requires.
class BlockAssembler {
 public:
  BlockAssembler(const Geometry& geom, const MaterialModel& plane, const MaterialModel& sphere,
                 double xi_hat, int ell_max, QuadratureSpec quad = {})
      : geom_(geom), xi_hat_(xi_hat), ell_max_(ell_max), rule_(quad.x_nodes) {
    if (!(xi_hat > 0.0)) throw std::invalid_argument("roundtrip: xi_hat > 0 required");
    if (ell_max < 1) throw std::invalid_argument("roundtrip: ell_max >= 1 required");

    const int nx = static_cast<int>(rule_.x.size());
    const double eps_p = plane.permittivity(xi_hat);
    const double eps_s = sphere.permittivity(xi_hat);
    r_te_.resize(nx);
    r_tm_.resize(nx);
    exp_half_.resize(nx);
    const double sl = geom.script_l();
    for (int i = 0; i < nx; ++i) {
      FresnelPair f = fresnel(eps_p, xi_hat, xi_hat * rule_.x[i]);
      r_te_[i] = f.r_te;
      r_tm_[i] = f.r_tm;
      // half the exponent plus half the weight, shared by row and column
      exp_half_[i] = -xi_hat * sl * rule_.x[i] + 0.5 * std::log(rule_.w[i]);
    }
    mie_ = mie_amplitudes_log(eps_s, xi_hat * geom.radius_nm, ell_max);
  }

  double xi_hat() const { return xi_hat_; }
  int ell_max() const { return ell_max_; }

  //! Balanced block for projection m (0 <= m <= ell_max).
  RoundTripBlock block(int m) const {
    auto [g_tm, g_te] = row_functions(m);
    const int n = static_cast<int>(g_tm.rows());
    RoundTripBlock b;
    b.m = m;
    b.ell_min = std::max(1, m);
    b.ell_max = ell_max_;
    b.xi_hat = xi_hat_;
    Eigen::VectorXd wtm = Eigen::Map<const Eigen::VectorXd>(r_tm_.data(), r_tm_.size());
    Eigen::VectorXd wte = -Eigen::Map<const Eigen::VectorXd>(r_te_.data(), r_te_.size());
    b.matrix.noalias() = g_tm * wtm.asDiagonal() * g_tm.transpose();
    b.matrix.noalias() += g_te * wte.asDiagonal() * g_te.transpose();
    if (!b.matrix.allFinite()) throw NumericalError("roundtrip_block: non-finite entry");
    return b;
  }

  //! Trace of the block for projection m without forming the matrix.
  double block_trace(int m) const {
    auto [g_tm, g_te] = row_functions(m);
    double tr = 0.0;
    for (int r = 0; r < g_tm.rows(); ++r)
      for (int i = 0; i < g_tm.cols(); ++i)
        tr += g_tm(r, i) * g_tm(r, i) * r_tm_[i] - g_te(r, i) * g_te(r, i) * r_te_[i];
    return tr;
  }

 private:
  // Row functions g^p[(l,P), i] = sqrt(|s_lP| w_i) C^p_lP(x_i) e^{-xi sL x_i};
  // every factor is combined in log space and exponentiated once.
  std::pair<Eigen::MatrixXd, Eigen::MatrixXd> row_functions(int m) const {
    if (m < 0 || m > ell_max_) throw std::invalid_argument("roundtrip: need 0 <= m <= ell_max");
    const int lmin = std::max(1, m);
    const int nl = ell_max_ - lmin + 1;
    const int nx = static_cast<int>(rule_.x.size());
    Eigen::MatrixXd g_tm(2 * nl, nx), g_te(2 * nl, nx);
    for (int i = 0; i < nx; ++i) {
      AngularTables t = angular_tables(m, ell_max_, rule_.x[i]);
      for (int l = lmin; l <= ell_max_; ++l) {
        const int k = l - lmin;
        const double ha = 0.5 * mie_[l - 1].a.log_abs;  // log sqrt|a_l|
        const double hb = 0.5 * mie_[l - 1].b.log_abs;
        const double lp = t.log_pi[l - t.lmin];
        const double lt = t.log_tau[l - t.lmin];
        const double e = exp_half_[i];
        g_tm(k, i) = safe_exp(ha + lt + e);        // (l,E) couples to TM via tau~
        g_te(k, i) = safe_exp(ha + lp + e);        // (l,E) couples to TE via pi~
        g_tm(nl + k, i) = safe_exp(hb + lp + e);   // (l,M) couples to TM via pi~
        g_te(nl + k, i) = safe_exp(hb + lt + e);   // (l,M) couples to TE via tau~
      }
    }
    return {std::move(g_tm), std::move(g_te)};
  }

  static double safe_exp(double arg) {
    if (arg > 700.0) throw NumericalError("roundtrip_block: row function overflow");
    return (arg < -745.0) ? 0.0 : std::exp(arg);
  }

  Geometry geom_;
  double xi_hat_;
  int ell_max_;
  HalfLineRule rule_;
  std::vector<double> r_te_, r_tm_, exp_half_;
  std::vector<MieAmplitudeLog> mie_;
};

//! One-shot assembly of a single block.
inline RoundTripBlock roundtrip_block(const Geometry& geom, const MaterialModel& plane,
                                      const MaterialModel& sphere, double xi_hat, int m,
                                      int ell_max, QuadratureSpec quad = {}) {
  return BlockAssembler(geom, plane, sphere, xi_hat, ell_max, quad).block(m);
}

//! Electric-dipole matrix elements from the explicit one-dimensional
//! integrals, used as the convention-pinning oracle for roundtrip_block:
//!   M_EE0 = -(3/2) (a1/xi^3) Int k^3 dk/kappa r_TM e^{-2 kappa d}
//!   M_EE1 =  (3/4) (a1/xi^3) Int k dk/kappa (xi^2 r_TE - kappa^2 r_TM) e^{-2 kappa d}
//! evaluated with kappa = xi x and the propagation distance d = L + R of the
//! round-trip operator (the punctual-sphere limit they serve has d -> L).
//! Returns (M_EE0, M_EE1).
inline std::pair<double, double> dipole_block_elements(const Geometry& geom,
                                                       const MaterialModel& plane,
                                                       const MaterialModel& sphere, double xi_hat,
                                                       QuadratureSpec quad = {}) {
  if (!(xi_hat > 0.0)) throw std::invalid_argument("dipole_block_elements: xi_hat > 0 required");
  const double eps_p = plane.permittivity(xi_hat);
  const double eps_s = sphere.permittivity(xi_hat);
  const double a1 = mie_amplitudes(eps_s, xi_hat * geom.radius_nm, 1)[0].a;
  const double d = geom.script_l();
  HalfLineRule rule(quad.x_nodes);
  double i0 = 0.0, i1 = 0.0;
  for (size_t i = 0; i < rule.x.size(); ++i) {
    const double x = rule.x[i];
    FresnelPair f = fresnel(eps_p, xi_hat, xi_hat * x);
    const double e = std::exp(-2.0 * xi_hat * d * x) * rule.w[i];
    i0 += (x * x - 1.0) * f.r_tm * e;
    i1 += (f.r_te - x * x * f.r_tm) * e;
  }
  return {-1.5 * a1 * i0, 0.75 * a1 * i1};
}

//! Debug dump of a block as CSV rows (row, col, value).
inline void dump_block_csv(const RoundTripBlock& b, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("dump_block_csv: cannot open " + path);
  out << "# balanced round-trip block m=" << b.m << " ell_min=" << b.ell_min
      << " ell_max=" << b.ell_max << " xi_hat=" << b.xi_hat << "\n";
  out << "row,col,value\n";
  char buf[64];
  for (int r = 0; r < b.matrix.rows(); ++r)
    for (int c = 0; c < b.matrix.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "%d,%d,%.17g\n", r, c, b.matrix(r, c));
      out << buf;
    }
}

}  // namespace casimir
