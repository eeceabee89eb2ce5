#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <utility>
#include <vector>

#include "casimir/common.hpp"
#include "casimir/energy.hpp"
#include "casimir/fresnel.hpp"
#include "casimir/materials.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

namespace detail {

// Frequency map scale for the closed-form model integrals: the exponential
// cutoff at scale 1/d competes with the material transparency scale, which
// the lowest dielectric resonance sets; blending the two keeps the node
// cluster on the integrand peak at every distance.
inline double model_xi_scale(double d, const MaterialModel& sphere) {
  double lam = 106.0;
  if (sphere.is_sellmeier()) {
    lam = sphere.sellmeier().terms[0].lambda_nm;
    for (const auto& t : sphere.sellmeier().terms) lam = std::min(lam, t.lambda_nm);
  }
  return 1.0 / (d + lam / (2.0 * pi));
}

}  // namespace detail

//! Point-scatterer energy kernel K(d) >= 0: the dipole-order energy of a
//! sphere whose center sits a distance d from the plane is -R^3 K(d),
//!   K(d) = (hbar c / 2 pi) Int dxi alpha(xi) xi^3
//!          Int_1^inf dx (|r_TE| + (2x^2 - 1)|r_TM|) e^{-2 xi d x}.
inline double cp_kernel(double d, const MaterialModel& plane, const MaterialModel& sphere,
                        const NumericsSpec& num = {}) {
  if (!(d > 0.0)) throw std::invalid_argument("cp_kernel: d > 0 required");
  FrequencyRule fr(num.xi_nodes, detail::model_xi_scale(d, sphere));
  HalfLineRule xr(num.x_nodes);
  double total = 0.0;
  for (size_t i = 0; i < fr.xi.size(); ++i) {
    const double xi = fr.xi[i];
    const double alpha = polarizability(sphere.permittivity(xi));
    const double eps_p = plane.permittivity(xi);
    double inner = 0.0;
    for (size_t j = 0; j < xr.x.size(); ++j) {
      const double x = xr.x[j];
      FresnelPair f = fresnel(eps_p, xi, xi * x);
      inner += xr.w[j] * (std::abs(f.r_te) + (2.0 * x * x - 1.0) * std::abs(f.r_tm)) *
               std::exp(-2.0 * xi * d * x);
    }
    total += fr.w[i] * alpha * xi * xi * xi * inner;
  }
  if (!finite(total)) throw ConvergenceError("cp_kernel: non-finite integral");
  return hbar_c_ev_nm / (2.0 * pi) * total;
}

//! Punctual-sphere (dipole-order) energy E1 = -R^3 K(L + R) in eV.  The
//! kernel is evaluated at the sphere-center distance, which the exact
//! multipole energy approaches as R -> 0.
inline double casimir_polder_integral(double radius_nm, double gap_nm, const MaterialModel& plane,
                                      const MaterialModel& sphere, const NumericsSpec& num = {}) {
  if (!(radius_nm > 0.0 && gap_nm > 0.0))
    throw std::invalid_argument("casimir_polder_integral: positive R, L required");
  double r3 = radius_nm * radius_nm * radius_nm;
  return -r3 * cp_kernel(gap_nm + radius_nm, plane, sphere, num);
}

//! Zero-temperature two-plate energy per area (eV/nm^2):
//!   E/A = (hbar c / 4 pi^2) Int dxi xi^2 Int_1^inf x dx
//!         Sum_p ln(1 - r_p^(1) r_p^(2) e^{-2 xi L x}).
inline double lifshitz_plane_plane(const MaterialModel& plane, const MaterialModel& sphere,
                                   double gap_nm, const NumericsSpec& num = {}) {
  if (!(gap_nm > 0.0)) throw std::invalid_argument("lifshitz_plane_plane: L > 0 required");
  FrequencyRule fr(num.xi_nodes, detail::model_xi_scale(gap_nm, sphere));
  HalfLineRule xr(num.x_nodes);
  double total = 0.0;
  for (size_t i = 0; i < fr.xi.size(); ++i) {
    const double xi = fr.xi[i];
    const double e1 = plane.permittivity(xi);
    const double e2 = sphere.permittivity(xi);
    double inner = 0.0;
    for (size_t j = 0; j < xr.x.size(); ++j) {
      const double x = xr.x[j];
      FresnelPair f1 = fresnel(e1, xi, xi * x);
      FresnelPair f2 = fresnel(e2, xi, xi * x);
      const double e = std::exp(-2.0 * xi * gap_nm * x);
      inner += xr.w[j] * x *
               (std::log1p(-f1.r_te * f2.r_te * e) + std::log1p(-f1.r_tm * f2.r_tm * e));
    }
    total += fr.w[i] * xi * xi * inner;
  }
  if (!finite(total)) throw ConvergenceError("lifshitz_plane_plane: non-finite integral");
  return hbar_c_ev_nm / (4.0 * pi * pi) * total;
}

struct C3PrimeFit {
  double c3_prime;     // eV
  double dispersion;   // rms residual of the fit over |intercept|
};

//! Short-distance coefficient of the two-plate energy, -2 lim L^2 (E/A),
//! from a quadratic extrapolation of L^2 (E/A) over the fit window.
inline C3PrimeFit c3_prime_fit(const MaterialModel& plane, const MaterialModel& sphere,
                               const NumericsSpec& num = {}, double window_lo_nm = 0.2,
                               double window_hi_nm = 2.0, int points = 8,
                               double dispersion_tol = 5e-3) {
  if (!(window_lo_nm > 0.0 && window_hi_nm > window_lo_nm))
    throw std::invalid_argument("c3_prime_fit: bad window");
  Eigen::MatrixXd a(points, 3);
  Eigen::VectorXd y(points);
  const double step = std::log(window_hi_nm / window_lo_nm) / (points - 1);
  for (int i = 0; i < points; ++i) {
    double L = window_lo_nm * std::exp(i * step);
    a(i, 0) = 1.0;
    a(i, 1) = L;
    a(i, 2) = L * L;
    y(i) = L * L * lifshitz_plane_plane(plane, sphere, L, num);
  }
  Eigen::Vector3d p = a.colPivHouseholderQr().solve(y);
  double rms = std::sqrt((a * p - y).squaredNorm() / points);
  C3PrimeFit fit{-2.0 * p(0), rms / std::abs(p(0))};
  if (fit.dispersion > dispersion_tol)
    throw ConvergenceError("c3_prime_fit: window not asymptotic (dispersion above tolerance)");
  return fit;
}

//! Closed-form model coefficients for one Drude plane and one single-term
//! Sellmeier sphere:
//!   c4 = 9 hbar c alpha0 / (32 pi^2)
//!   c3 = 3 hbar c alpha0 / (16 (sqrt(2) lambda_P + sqrt(1 - alpha0) lambda_1))
//!   L* = c4/c3; c3' from the Lifshitz short-distance fit.
struct Coefficients {
  double c3_ev;
  double c4_ev_nm;
  double c3_prime_ev;
  double l_star_nm;
};

inline Coefficients coefficients(const DrudeParams& plane, const SellmeierParams& sphere,
                                 const NumericsSpec& num = {}) {
  plane.validate();
  sphere.validate();
  if (sphere.terms.size() != 1)
    throw std::invalid_argument("coefficients: c3 closed form requires a single Sellmeier term");
  const double alpha0 = polarizability(sphere.static_permittivity());
  const double mix = std::sqrt(2.0) * plane.lambda_p_nm +
                     std::sqrt(1.0 - alpha0) * sphere.terms[0].lambda_nm;
  Coefficients c;
  c.c4_ev_nm = 9.0 * hbar_c_ev_nm * alpha0 / (32.0 * pi * pi);
  c.c3_ev = 3.0 * hbar_c_ev_nm * alpha0 / (16.0 * mix);
  c.l_star_nm = (alpha0 > 0.0) ? c.c4_ev_nm / c.c3_ev : 0.0;
  c.c3_prime_ev =
      c3_prime_fit(MaterialModel(plane), MaterialModel(sphere), num).c3_prime;
  return c;
}

//! Punctual-sphere power laws E_CP = -4 pi c4 R^3 / 3 L^4 and
//! E_vdW = -4 pi c3 R^3 / 3 L^3; they cross exactly at L* = c4/c3.
struct PowerLaws {
  double e_cp_ev;
  double e_vdw_ev;
};

inline PowerLaws power_laws(const Coefficients& c, double radius_nm, double gap_nm) {
  double r3 = radius_nm * radius_nm * radius_nm;
  double l3 = gap_nm * gap_nm * gap_nm;
  return {-4.0 * pi * c.c4_ev_nm * r3 / (3.0 * l3 * gap_nm), -4.0 * pi * c.c3_ev * r3 / (3.0 * l3)};
}

//! Finite-size pairwise-summation forms:
//!   Evdw_bar = -pi c3 (2R(L+R)/(L(L+2R)) - ln((L+2R)/L))
//!   Ecp_bar  = -4 pi c4 R^3 / (3 L^2 (L+2R)^2)
struct HamakerEnergies {
  double e_vdw_bar_ev;
  double e_cp_bar_ev;
};

inline HamakerEnergies hamaker_energies(const Coefficients& c, double radius_nm, double gap_nm) {
  const double R = radius_nm, L = gap_nm;
  if (!(R > 0.0 && L > 0.0)) throw std::invalid_argument("hamaker_energies: positive R, L required");
  double vdw = -pi * c.c3_ev * (2.0 * R * (L + R) / (L * (L + 2.0 * R)) - std::log((L + 2.0 * R) / L));
  double cp = -4.0 * pi * c.c4_ev_nm * R * R * R / (3.0 * L * L * (L + 2.0 * R) * (L + 2.0 * R));
  return {vdw, cp};
}

//! Proximity-force energy E_PFA(L) = 2 pi R Int_L^inf (E/A)(z) dz together
//! with the short-distance coefficient c3' (so E_PFA ~ -pi c3' R/L for
//! L << R, L*).
inline std::pair<double, double> pfa_energy_and_c3prime(const MaterialModel& plane,
                                                        const MaterialModel& sphere,
                                                        double radius_nm, double gap_nm,
                                                        const NumericsSpec& num = {}) {
  if (!(radius_nm > 0.0 && gap_nm > 0.0))
    throw std::invalid_argument("pfa_energy_and_c3prime: positive R, L required");
  // z = L + L u/(1-u); the integrand decays like z^-2, which the map turns
  // into a bounded function of u.
  QuadRule r = gauss_legendre_01(num.x_nodes);
  double integral = 0.0;
  for (size_t i = 0; i < r.nodes.size(); ++i) {
    double u = r.nodes[i];
    double om = 1.0 - u;
    double z = gap_nm * (1.0 + u / om);
    double jac = gap_nm / (om * om);
    integral += r.weights[i] * jac * lifshitz_plane_plane(plane, sphere, z, num);
  }
  double c3p = c3_prime_fit(plane, sphere, num).c3_prime;
  return {2.0 * pi * radius_nm * integral, c3p};
}

}  // namespace casimir
