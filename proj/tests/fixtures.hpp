#pragma once

#include "toricfan/cone.hpp"
#include "toricfan/fan.hpp"

#include <initializer_list>
#include <vector>

namespace fixtures {

using toricfan::Cone;
using toricfan::Fan;
using toricfan::Integer;
using toricfan::LatticeVector;

inline LatticeVector v(std::initializer_list<long> xs) {
  LatticeVector out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

inline std::vector<LatticeVector> square_rays() {
  return {v({1, 0, 1}), v({0, 1, 1}), v({-1, 0, 1}), v({0, -1, 1})};
}

inline Cone square_cone() { return toricfan::cone_from_rays(3, square_rays()); }

// The square cone, closed up by four simplicial cones through (0,0,-1).
inline Fan square_fan() {
  auto rays = square_rays();
  rays.push_back(v({0, 0, -1}));
  return toricfan::fan_from_cones(3, rays, {{0, 1, 2, 3}, {0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}});
}

inline std::vector<LatticeVector> not_pyramidal_rays() {
  return {v({1, 1, 0, 1}), v({1, -1, 0, 1}), v({-1, -1, 0, 1}),
          v({-1, 1, 0, 1}), v({0, 0, 1, 1}), v({0, 3, -1, 1})};
}

inline Fan not_pyramidal_fan() {
  return toricfan::fan_from_cones(4, not_pyramidal_rays(), {{0, 1, 2, 3, 4, 5}});
}

inline Fan p1() { return toricfan::fan_from_cones(1, {v({1}), v({-1})}, {{0}, {1}}); }

inline Fan p2() {
  return toricfan::fan_from_cones(2, {v({1, 0}), v({0, 1}), v({-1, -1})}, {{0, 1}, {1, 2}, {0, 2}});
}

inline Fan p1xp1() {
  return toricfan::fan_from_cones(2, {v({1, 0}), v({0, 1}), v({-1, 0}), v({0, -1})},
                                  {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
}

inline Fan p3() {
  return toricfan::fan_from_cones(3, {v({1, 0, 0}), v({0, 1, 0}), v({0, 0, 1}), v({-1, -1, -1})},
                                  {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

// Weighted projective plane P(1,1,2): simplicial, not smooth.
inline Fan p112() {
  return toricfan::fan_from_cones(2, {v({1, 0}), v({0, 1}), v({-1, -2})}, {{0, 1}, {1, 2}, {0, 2}});
}

}  // namespace fixtures
