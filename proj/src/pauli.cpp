#include "spincorr/pauli.hpp"

namespace spincorr {

using std::complex;

const Eigen::Matrix2cd& pauli(Axis a) {
  static const Eigen::Matrix2cd sx = (Eigen::Matrix2cd() << 0, 1, 1, 0).finished();
  static const Eigen::Matrix2cd sy =
      (Eigen::Matrix2cd() << 0, complex<double>(0, -1), complex<double>(0, 1), 0).finished();
  static const Eigen::Matrix2cd sz = (Eigen::Matrix2cd() << 1, 0, 0, -1).finished();
  switch (a) {
    case Axis::X: return sx;
    case Axis::Y: return sy;
    default: return sz;
  }
}

const Eigen::Matrix2cd& identity2() {
  static const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  return id;
}

Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a1, const Eigen::Matrix2cd& a2) {
  Eigen::Matrix4cd out;
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c)
      out.block<2, 2>(2 * a, 2 * c) = a1(a, c) * a2;
  return out;
}

Eigen::Matrix4cd sigma_pair(Axis i, Axis j) { return kron(pauli(i), pauli(j)); }

}  // namespace spincorr
