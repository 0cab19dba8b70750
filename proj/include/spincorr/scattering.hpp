#pragma once

#include <complex>
#include <vector>

#include "spincorr/state.hpp"

namespace spincorr {

// Coulomb scattering of two electrons in the CM frame, nonrelativistic,
// first-order in the interaction. Angles in radians, v_rel in atomic units.
struct ScatteringParams {
  double theta = M_PI / 2;  // CM scattering angle
  double omega = M_PI / 4;  // opening angle between the incoming spins
  double phi = 0.0;         // azimuth of spin 2 about spin 1
  double v_rel = 1.5;

  double alpha() const { return 1.0 / v_rel; }
};

// theta must stay inside (kThetaMin, pi - kThetaMin): the amplitude has a
// pole at 0 and the exchange term one at pi.
inline constexpr double kThetaMin = 1e-6;

// f(theta) = csc^2(theta/2) * exp(-i*alpha*ln(1 - cos(theta))), the Coulomb
// amplitude stripped of the overall constant (it cancels in the state).
std::complex<double> amplitude(double theta, double alpha);

// Direct +- exchange combinations entering the singlet/triplet channels.
std::complex<double> symmetric_amplitude(double theta, double alpha);      // f(th) + f(pi-th)
std::complex<double> antisymmetric_amplitude(double theta, double alpha);  // f(th) - f(pi-th)

// Post-scattering spin state for initially separable spins with opening
// angle omega. Throws NullStateError at the degenerate point where every
// amplitude vanishes (omega = 0 mod 2pi together with theta = pi/2).
TwoElectronState scattering_state(const ScatteringParams& p);

struct SweepGrid {
  std::vector<double> theta;  // all inside the open interval
  std::vector<double> omega;
  std::vector<double> phi;
  double v_rel = 1.5;
};

struct SweepRow {
  double theta, omega, phi, v_rel;
  double entanglement;  // NaN when degenerate
  bool degenerate;
};

// Cartesian product of the grid axes in lexicographic (theta, omega, phi)
// order. Degenerate points become flagged NaN rows instead of errors.
std::vector<SweepRow> sweep(const SweepGrid& grid);

// Max spread of E over `samples` equally spaced phi values; the measure must
// not depend on the azimuth.
double phi_spread(double theta, double omega, double v_rel, int samples);

std::vector<double> linspace(double lo, double hi, int n);

}  // namespace spincorr
