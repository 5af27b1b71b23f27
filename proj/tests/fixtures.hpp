#pragma once

#include "rframes/wavepacket.hpp"

namespace fixtures {

using namespace rframes;

inline GridGeometryd cube(double half, Eigen::Index n) {
  return GridGeometryd::cell_centered(Eigen::Vector3d::Constant(-half),
                                      Eigen::Vector3d::Constant(half), Index3::Constant(n));
}

inline GaussianPacketd packet(Eigen::Vector3d c, double width,
                              Eigen::Vector3d vel = Eigen::Vector3d::Zero()) {
  GaussianPacketd p;
  p.center = c;
  p.width = width;
  p.velocity = vel;
  return p;
}

// Branch a: both packets at (+5,0,0), weight 0.64; branch b: both at
// (-5,0,0), weight 0.36. Width 0.8 m on a [-12,12]^3 box.
inline GaussianPairSpecd weighted_pair(Eigen::Index n, int sign = 1) {
  GaussianPairSpecd s;
  s.grid = cube(12, n);
  s.sign = sign;
  s.a = {packet({5, 0, 0}, 0.8), packet({5, 0, 0}, 0.8), 0.64};
  s.b = {packet({-5, 0, 0}, 0.8), packet({-5, 0, 0}, 0.8), 0.36};
  return s;
}

}  // namespace fixtures
