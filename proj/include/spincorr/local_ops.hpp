#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "spincorr/pauli.hpp"
#include "spincorr/rng.hpp"
#include "spincorr/state.hpp"

namespace spincorr {

struct LocalUnitary {
  Eigen::Matrix2cd u;
  // u u† = u† u = I within tol. Throws NotUnitary.
  void validate(double tol = 1e-12) const;
};

// {L_n} with sum L_n L_n† = I and every L_n normal. The normality condition
// is what makes the induced Bloch map D commute with its transpose.
struct KrausSet {
  std::vector<Eigen::Matrix2cd> ops;
  // Throws InvalidKrausSet on completeness or normality violation.
  void validate(double tol = 1e-10) const;
};

enum class BlochMapKind { Orthogonal, Contraction };

struct BlochMap {
  Eigen::Matrix3d m;
  BlochMapKind kind;
};

// rho' = (u1† (x) u2†) rho (u1 (x) u2). Daggers on the left; the induced
// tensor transform is T' = Q1 T Q2^T.
DensityMatrix4 apply_local_unitaries(const DensityMatrix4& rho, const LocalUnitary& u1,
                                     const LocalUnitary& u2);

// rho' = sum_{mn} (L_m (x) L_n) rho (L_m† (x) L_n†). Daggers on the right
// here; the two conventions are kept exactly as they differ.
DensityMatrix4 apply_local_povm(const DensityMatrix4& rho, const KrausSet& k1,
                                const KrausSet& k2);

// Q_ij = Re Tr(u sigma_i u† sigma_j) / 2; orthogonal with det +1.
BlochMap q_matrix(const LocalUnitary& u);

// D_ij = Re Tr((sum_n L_n† sigma_i L_n) sigma_j) / 2; a contraction that
// commutes with its transpose.
BlochMap d_matrix(const KrausSet& k);

// Checks sum_n L_n sigma_i L_n† == sum_j (D^T)_ij sigma_j entrywise.
// Returns the max deviation.
double d_transpose_residue(const KrausSet& k);

inline bool d_transpose_identity_check(const KrausSet& k, double tol = 1e-10) {
  return d_transpose_residue(k) <= tol;
}

// Eigenvalues of sigma_i (x) sigma_j, ascending. Always {-1, -1, +1, +1}.
std::array<double, 4> sigma_pair_eigenvalues(Axis i, Axis j);

// Haar-uniform 2x2 unitary.
LocalUnitary random_local_unitary(SplitMix64& rng);

// `count` normal operators sharing one random eigenbasis, diagonals drawn
// complex Gaussian then rescaled so completeness holds exactly. The shared
// eigenbasis is what keeps every operator normal after rescaling.
// Throws GenerationFailure if a diagonal column is too small to rescale
// after bounded retries.
KrausSet random_kraus_set(SplitMix64& rng, int count);

}  // namespace spincorr
