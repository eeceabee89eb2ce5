#pragma once

#include <stdexcept>

namespace casimir {

//! Plane-sphere geometry: sphere radius R and closest-approach gap L, both
//! in nm.  The propagation distance between the two reference points
//! (sphere center, its projection on the plane) is script_L = L + R.
struct Geometry {
  double radius_nm;
  double gap_nm;

  Geometry(double R, double L) : radius_nm(R), gap_nm(L) {
    if (!(R > 0.0)) throw std::invalid_argument("Geometry: radius must be > 0");
    if (!(L > 0.0)) throw std::invalid_argument("Geometry: gap must be > 0");
  }

  double script_l() const { return gap_nm + radius_nm; }
};

}  // namespace casimir
