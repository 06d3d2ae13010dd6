#pragma once

// Hand-built reference groups for tests. Deliberately constructed here from
// first principles (tables written out or generated by simple loops) so the
// library's own catalog can be checked against them.

#include <vector>

#include "trunk/perm.hpp"
#include "trunk/permgroup.hpp"

namespace fixtures {

inline trunk::PermGroup cyclic(int n) {
  std::vector<int> img(n);
  for (int i = 0; i < n; ++i) img[i] = (i + 1) % n;
  return trunk::PermGroup::from_generators(n, {trunk::Perm::from_images(img)},
                                           "C" + std::to_string(n));
}

inline trunk::PermGroup sym(int n) {
  std::vector<int> cycle(n), swap01(n);
  for (int i = 0; i < n; ++i) {
    cycle[i] = (i + 1) % n;
    swap01[i] = i;
  }
  swap01[0] = 1;
  swap01[1] = 0;
  std::vector<trunk::Perm> gens{trunk::Perm::from_images(swap01)};
  if (n > 2) gens.push_back(trunk::Perm::from_images(cycle));
  return trunk::PermGroup::from_generators(n, gens, "S" + std::to_string(n));
}

inline trunk::PermGroup alt(int n) {
  // Generated by the 3-cycles (0 1 i).
  std::vector<trunk::Perm> gens;
  for (int i = 2; i < n; ++i) {
    std::vector<int> img(n);
    for (int j = 0; j < n; ++j) img[j] = j;
    img[0] = 1;
    img[1] = i;
    img[i] = 0;
    gens.push_back(trunk::Perm::from_images(img));
  }
  return trunk::PermGroup::from_generators(n, gens, "A" + std::to_string(n));
}

// Projective line over the 7-element field, points 0..6 = field, 7 = the
// point at infinity. Generators z -> z+1 and z -> -1/z.
inline trunk::PermGroup psl27() {
  trunk::Perm a = trunk::Perm::from_images({1, 2, 3, 4, 5, 6, 0, 7});
  trunk::Perm b = trunk::Perm::from_images({7, 6, 3, 2, 5, 4, 1, 0});
  return trunk::PermGroup::from_generators(8, {a, b}, "PSL(2,7)");
}

// Affine maps x -> ax+b over the 5-element field (a = 1 shift, a = 2 scale).
inline trunk::PermGroup agl15() {
  trunk::Perm shift = trunk::Perm::from_images({1, 2, 3, 4, 0});
  trunk::Perm scale = trunk::Perm::from_images({0, 2, 4, 1, 3});
  return trunk::PermGroup::from_generators(5, {shift, scale}, "AGL(1,5)");
}

// The 8-element field as bit-vectors over x^3 = x + 1; point index is the
// polynomial's bit pattern. Generators x+1 (XOR), multiplication by the
// primitive element, and the squaring map.
inline trunk::PermGroup agammal18() {
  trunk::Perm add1 = trunk::Perm::from_images({1, 0, 3, 2, 5, 4, 7, 6});
  trunk::Perm mulz = trunk::Perm::from_images({0, 2, 4, 6, 3, 1, 7, 5});
  trunk::Perm frob = trunk::Perm::from_images({0, 1, 4, 5, 6, 7, 2, 3});
  return trunk::PermGroup::from_generators(8, {add1, mulz, frob}, "AGL(1,8).Gal");
}

}  // namespace fixtures
