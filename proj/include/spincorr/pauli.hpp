#pragma once

#include <Eigen/Dense>

namespace spincorr {

enum class Axis : int { X = 0, Y = 1, Z = 2 };

inline constexpr const char* axis_name(Axis a) {
  switch (a) {
    case Axis::X: return "x";
    case Axis::Y: return "y";
    default: return "z";
  }
}

const Eigen::Matrix2cd& pauli(Axis a);
const Eigen::Matrix2cd& identity2();

// Kronecker product with particle 1 on the slow (major) index:
// out[2a+b][2c+d] = a1[a][c] * a2[b][d].
Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a1, const Eigen::Matrix2cd& a2);

// sigma_i (x) sigma_j acting on the two-particle space.
Eigen::Matrix4cd sigma_pair(Axis i, Axis j);

}  // namespace spincorr
