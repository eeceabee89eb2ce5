#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "casimir/common.hpp"

namespace casimir {

//! Drude metal: eps(i xi) = 1 + omega_p^2 / (xi (xi + gamma)).
struct DrudeParams {
  double lambda_p_nm = 136.0;     // plasma wavelength
  double gamma_ratio = 0.0033;    // damping as a fraction of omega_p

  double omega_p() const { return 2.0 * pi / lambda_p_nm; }  // reduced, nm^-1
  double gamma() const { return gamma_ratio * omega_p(); }

  void validate() const {
    if (!(lambda_p_nm > 0.0)) throw std::invalid_argument("Drude: lambda_p_nm must be > 0");
    if (!(gamma_ratio >= 0.0)) throw std::invalid_argument("Drude: gamma_ratio must be >= 0");
  }
};

struct SellmeierTerm {
  double strength;    // B_i, dimensionless
  double lambda_nm;   // resonance wavelength
};

//! Sellmeier dielectric: eps(i xi) = 1 + sum_i B_i w_i^2 / (w_i^2 + xi^2), no damping.
struct SellmeierParams {
  std::vector<SellmeierTerm> terms{{4.91, 106.0}};

  void validate() const {
    if (terms.empty()) throw std::invalid_argument("Sellmeier: at least one term required");
    for (const auto& t : terms) {
      if (!(t.strength > 0.0)) throw std::invalid_argument("Sellmeier: B_i must be > 0");
      if (!(t.lambda_nm > 0.0)) throw std::invalid_argument("Sellmeier: lambda_i must be > 0");
    }
  }

  double static_permittivity() const {
    double e = 1.0;
    for (const auto& t : terms) e += t.strength;
    return e;
  }
};

struct VacuumParams {};

//! Dispatch wrapper over the supported dielectric response models.
class MaterialModel {
 public:
  MaterialModel() : var_(VacuumParams{}) {}
  explicit MaterialModel(DrudeParams p) : var_(p) { p.validate(); }
  explicit MaterialModel(SellmeierParams p) : var_(std::move(p)) { std::get<SellmeierParams>(var_).validate(); }

  static MaterialModel vacuum() { return MaterialModel(); }
  //! Default metallic plane (copper-like Drude parameters).
  static MaterialModel default_plane() { return MaterialModel(DrudeParams{}); }
  //! Default dielectric sphere (diamond-like single-term Sellmeier).
  static MaterialModel default_sphere() { return MaterialModel(SellmeierParams{}); }

  bool is_vacuum() const { return std::holds_alternative<VacuumParams>(var_); }
  bool is_drude() const { return std::holds_alternative<DrudeParams>(var_); }
  bool is_sellmeier() const { return std::holds_alternative<SellmeierParams>(var_); }

  const DrudeParams& drude() const { return std::get<DrudeParams>(var_); }
  const SellmeierParams& sellmeier() const { return std::get<SellmeierParams>(var_); }

  //! eps(i xi) at reduced imaginary frequency xi_hat = xi/c in nm^-1.
  //! Drude diverges at xi_hat = 0; that limit is signaled as +infinity and
  //! integrand consumers must use the finite kappa-weighted limit instead.
  double permittivity(double xi_hat) const {
    if (!(xi_hat >= 0.0)) throw std::invalid_argument("permittivity: xi_hat must be >= 0");
    if (is_vacuum()) return 1.0;
    if (is_drude()) {
      if (xi_hat == 0.0) return std::numeric_limits<double>::infinity();
      const auto& d = drude();
      double wp = d.omega_p();
      return 1.0 + wp * wp / (xi_hat * (xi_hat + d.gamma()));
    }
    double e = 1.0;
    for (const auto& t : sellmeier().terms) {
      double w = 2.0 * pi / t.lambda_nm;
      e += t.strength * w * w / (w * w + xi_hat * xi_hat);
    }
    return e;
  }

  //! Stable one-line description for provenance headers and cache keys.
  std::string describe() const {
    char buf[160];
    if (is_vacuum()) return "vacuum";
    if (is_drude()) {
      std::snprintf(buf, sizeof buf, "drude(lambda_p_nm=%.17g,gamma_ratio=%.17g)",
                    drude().lambda_p_nm, drude().gamma_ratio);
      return buf;
    }
    std::string s = "sellmeier(";
    for (size_t i = 0; i < sellmeier().terms.size(); ++i) {
      const auto& t = sellmeier().terms[i];
      std::snprintf(buf, sizeof buf, "%sB=%.17g,lambda_nm=%.17g", i ? ";" : "", t.strength, t.lambda_nm);
      s += buf;
    }
    return s + ")";
  }

 private:
  std::variant<VacuumParams, DrudeParams, SellmeierParams> var_;
};

//! (eps - 1)/(eps + 2); the sphere's reduced polarizability is alpha * R^3.
inline double polarizability(double eps) {
  if (!(eps >= 1.0)) throw std::invalid_argument("polarizability: eps >= 1 required");
  if (std::isinf(eps)) return 1.0;
  return (eps - 1.0) / (eps + 2.0);
}

}  // namespace casimir
