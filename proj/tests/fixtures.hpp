#pragma once

#include "qsm/catalog.hpp"
#include "qsm/quadmap.hpp"

namespace qsm::testing {

// Spherical map S^2 -> S^3 with non-scalar S = diag(5/4, 5/4, 3/2):
//   F(x) = (x1^2 + x2^2 + x3^2/2, (sqrt(3)/2) x3^2, x1 x3, x2 x3).
// Its energy density 2 X^t S X - 2 is non-constant on the sphere.
inline QuadMap<Surd> mixed_energy_map() {
  Matrix<Surd> a1(3, 3), a2(3, 3), a3(3, 3), a4(3, 3);
  a1(0, 0) = Surd(1);
  a1(1, 1) = Surd(1);
  a1(2, 2) = Surd(rat(1, 2));
  a2(2, 2) = Surd::make(0, 0, rat(1, 2), 0);
  a3(0, 2) = a3(2, 0) = Surd(rat(1, 2));
  a4(1, 2) = a4(2, 1) = Surd(rat(1, 2));
  return QuadMap<Surd>::validated({a1, a2, a3, a4});
}

inline QuadMap<Surd> catalog_map(const std::string& name) {
  return catalog_get(name).map;
}

}  // namespace qsm::testing
