#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>

#include "spincorr/rng.hpp"

namespace spincorr {

// Amplitudes of a two-electron spin state in the product basis, ordered
// (++, +-, -+, --) with particle 1's projection named first.
struct SpinCoefficients {
  std::complex<double> c_pp{};
  std::complex<double> c_pm{};
  std::complex<double> c_mp{};
  std::complex<double> c_mm{};

  std::array<std::complex<double>, 4> as_array() const { return {c_pp, c_pm, c_mp, c_mm}; }
  double squared_norm() const;
};

// A normalized state. Construct via normalize() so the unit-norm invariant
// holds by construction.
struct TwoElectronState {
  SpinCoefficients c;
  Eigen::Vector4cd as_vector() const;
};

struct DensityMatrix4 {
  Eigen::Matrix4cd m;
  // Hermiticity and unit trace at 1e-12, eigenvalues >= -1e-10.
  // Throws NonHermitianInput with a description of the violated property.
  void validate(double herm_tol = 1e-12, double psd_tol = 1e-10) const;
};

enum class BellKind { Singlet, TripletA, TripletB, TripletC };

// Throws NullStateError when the squared norm is below 1e-300.
TwoElectronState normalize(const SpinCoefficients& raw);

TwoElectronState bell_state(BellKind kind);

DensityMatrix4 density_matrix(const TwoElectronState& s);

// Haar-uniform pure state (4 complex Gaussians, normalized).
TwoElectronState random_state(SplitMix64& rng);

// Haar-uniform product state: independent single-particle spinors.
TwoElectronState random_product_state(SplitMix64& rng);

}  // namespace spincorr
