#include "spincorr/scattering.hpp"

#include <cmath>
#include <limits>

#include "spincorr/errors.hpp"
#include "spincorr/tensor.hpp"

namespace spincorr {

using std::complex;

static void check_theta(double theta) {
  if (!(theta > kThetaMin && theta < M_PI - kThetaMin))
    throw DomainError("theta outside (" + std::to_string(kThetaMin) + ", pi - " +
                      std::to_string(kThetaMin) + ")");
}

static void check_v_rel(double v_rel) {
  if (!(v_rel > 0.0)) throw DomainError("v_rel must be positive");
}

complex<double> amplitude(double theta, double alpha) {
  check_theta(theta);
  double s = std::sin(theta / 2.0);
  double mag = 1.0 / (s * s);
  double phase = -alpha * std::log(1.0 - std::cos(theta));
  return std::polar(mag, phase);
}

complex<double> symmetric_amplitude(double theta, double alpha) {
  return amplitude(theta, alpha) + amplitude(M_PI - theta, alpha);
}

complex<double> antisymmetric_amplitude(double theta, double alpha) {
  return amplitude(theta, alpha) - amplitude(M_PI - theta, alpha);
}

TwoElectronState scattering_state(const ScatteringParams& p) {
  check_theta(p.theta);
  check_v_rel(p.v_rel);
  double alpha = p.alpha();
  complex<double> fs = symmetric_amplitude(p.theta, alpha);
  complex<double> fa = antisymmetric_amplitude(p.theta, alpha);

  double abs_omega = std::abs(p.omega);
  double half = 0.5 * abs_omega;
  double sin_half = std::sin(half);
  // Omega at an exact multiple of 2pi means the spins start parallel again;
  // the sine is mathematically zero there and rounding noise in sin() must
  // not smuggle in a spurious singlet component.
  if (std::remainder(abs_omega, 2.0 * M_PI) == 0.0) sin_half = 0.0;
  complex<double> eip = std::polar(1.0, p.phi);

  SpinCoefficients c;
  c.c_pp = std::cos(half) * fa;
  c.c_pm = 0.5 * eip * sin_half * (fs + fa);
  c.c_mp = 0.5 * eip * sin_half * (fa - fs);
  c.c_mm = 0.0;
  return normalize(c);  // NullStateError exactly at the degenerate point
}

std::vector<SweepRow> sweep(const SweepGrid& grid) {
  for (double th : grid.theta) check_theta(th);
  check_v_rel(grid.v_rel);
  std::vector<SweepRow> rows;
  rows.reserve(grid.theta.size() * grid.omega.size() * grid.phi.size());
  for (double th : grid.theta)
    for (double om : grid.omega)
      for (double ph : grid.phi) {
        SweepRow row{th, om, ph, grid.v_rel, 0.0, false};
        try {
          row.entanglement = entanglement_measure(
              scattering_state({th, om, ph, grid.v_rel}));
        } catch (const NullStateError&) {
          row.entanglement = std::numeric_limits<double>::quiet_NaN();
          row.degenerate = true;
        }
        rows.push_back(row);
      }
  return rows;
}

double phi_spread(double theta, double omega, double v_rel, int samples) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int k = 0; k < samples; ++k) {
    double phi = 2.0 * M_PI * k / samples;
    double e = entanglement_measure(scattering_state({theta, omega, phi, v_rel}));
    lo = std::min(lo, e);
    hi = std::max(hi, e);
  }
  return hi - lo;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v;
  v.reserve(static_cast<size_t>(std::max(n, 0)));
  if (n == 1) {
    v.push_back(lo);
    return v;
  }
  for (int k = 0; k < n; ++k) v.push_back(lo + (hi - lo) * k / (n - 1));
  return v;
}

}  // namespace spincorr
