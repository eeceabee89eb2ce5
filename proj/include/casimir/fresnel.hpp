#pragma once

#include <cmath>
#include <stdexcept>

#include "casimir/common.hpp"

namespace casimir {

//! Specular reflection amplitudes of a homogeneous half-space at imaginary
//! frequency.  For eps >= 1 they satisfy -1 <= r_te <= 0 <= r_tm <= 1.
struct FresnelPair {
  double r_te;
  double r_tm;
};

//! Fresnel amplitudes in the kappa variable, kappa = sqrt(xi_hat^2 + k^2).
//! The perfect-mirror limit eps = +inf gives (-1, +1) exactly.
inline FresnelPair fresnel(double eps, double xi_hat, double kappa) {
  if (!(eps >= 1.0)) throw std::invalid_argument("fresnel: eps >= 1 required");
  if (!(xi_hat > 0.0)) throw std::invalid_argument("fresnel: xi_hat > 0 required");
  if (!(kappa >= xi_hat)) throw std::invalid_argument("fresnel: kappa >= xi_hat required");
  if (std::isinf(eps)) return {-1.0, 1.0};
  double km = std::sqrt(kappa * kappa + (eps - 1.0) * xi_hat * xi_hat);
  return {(kappa - km) / (kappa + km), (eps * kappa - km) / (eps * kappa + km)};
}

}  // namespace casimir
