#pragma once

#include <Eigen/Dense>

#include "spincorr/pauli.hpp"
#include "spincorr/state.hpp"

namespace spincorr {

enum class Particle { First = 1, Second = 2 };

struct CorrelationTensor {
  Eigen::Matrix3d t;
};

struct Polarization {
  Eigen::Vector3d p;
};

// Expectation values <sigma_i (x) sigma_j> written out in the amplitudes.
// This is the fast production route; correlation_tensor_trace is the slow
// reference it must agree with.
CorrelationTensor correlation_tensor_closed(const TwoElectronState& s);

// T_ij = Re Tr(rho * sigma_i (x) sigma_j), built from explicit Kronecker
// products with no algebraic shortcuts. Kept deliberately naive.
// Throws NonHermitianInput if any imaginary residue exceeds 1e-10.
CorrelationTensor correlation_tensor_trace(const DensityMatrix4& rho);

Polarization polarization(const TwoElectronState& s, Particle which);
Polarization polarization_trace(const DensityMatrix4& rho, Particle which);

// Outer product tensor P1_i * P2_j, the correlation tensor a product state
// with these polarizations would have.
CorrelationTensor product_tensor(const Polarization& p1, const Polarization& p2);

// sqrt(sum_ij t_ij^2 / 3).
double tensor_norm(const CorrelationTensor& t);

// E = ||T - P1 (x) P2||; zero exactly for product states, 1 for Bell states.
double entanglement_measure(const TwoElectronState& s);
double entanglement_measure(const DensityMatrix4& rho);

// Exchanging the particles transposes T and swaps the polarizations.
// Returns the largest deviation from that relation.
double swap_symmetry_residue(const TwoElectronState& s);

inline bool swap_symmetry_check(const TwoElectronState& s, double tol = 1e-12) {
  return swap_symmetry_residue(s) <= tol;
}

}  // namespace spincorr
