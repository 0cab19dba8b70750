#include "spincorr/state.hpp"

#include <cmath>

#include "spincorr/errors.hpp"

namespace spincorr {

using std::complex;

double SpinCoefficients::squared_norm() const {
  return std::norm(c_pp) + std::norm(c_pm) + std::norm(c_mp) + std::norm(c_mm);
}

Eigen::Vector4cd TwoElectronState::as_vector() const {
  Eigen::Vector4cd v;
  v << c.c_pp, c.c_pm, c.c_mp, c.c_mm;
  return v;
}

void DensityMatrix4::validate(double herm_tol, double psd_tol) const {
  double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm > herm_tol)
    throw NonHermitianInput("density matrix not Hermitian, residue " + std::to_string(herm));
  double tr_err = std::abs(m.trace() - complex<double>(1.0));
  if (tr_err > herm_tol)
    throw NonHermitianInput("density matrix trace off by " + std::to_string(tr_err));
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(m, Eigen::EigenvaluesOnly);
  double min_ev = es.eigenvalues().minCoeff();
  if (min_ev < -psd_tol)
    throw NonHermitianInput("density matrix has eigenvalue " + std::to_string(min_ev));
}

TwoElectronState normalize(const SpinCoefficients& raw) {
  double mx = 0.0;
  for (const auto& c : raw.as_array()) mx = std::max(mx, std::abs(c));
  if (!(mx > 1e-300)) throw NullStateError("state amplitudes too small to normalize");
  // Scale by the max first so the norm never under- or overflows.
  double pre = 1.0 / mx;
  double n2 = 0.0;
  for (const auto& c : raw.as_array()) n2 += std::norm(c * pre);
  double inv = pre / std::sqrt(n2);
  return {{raw.c_pp * inv, raw.c_pm * inv, raw.c_mp * inv, raw.c_mm * inv}};
}

TwoElectronState bell_state(BellKind kind) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (kind) {
    case BellKind::Singlet: return {{0.0, r, -r, 0.0}};
    case BellKind::TripletA: return {{0.0, r, r, 0.0}};
    case BellKind::TripletB: return {{r, 0.0, 0.0, -r}};
    default: return {{r, 0.0, 0.0, r}};
  }
}

DensityMatrix4 density_matrix(const TwoElectronState& s) {
  Eigen::Vector4cd v = s.as_vector();
  return {v * v.adjoint()};
}

static complex<double> gaussian_c(SplitMix64& rng) {
  auto [a, b] = rng.next_gaussian_pair();
  return {a, b};
}

TwoElectronState random_state(SplitMix64& rng) {
  SpinCoefficients c{gaussian_c(rng), gaussian_c(rng), gaussian_c(rng), gaussian_c(rng)};
  return normalize(c);
}

TwoElectronState random_product_state(SplitMix64& rng) {
  complex<double> a0 = gaussian_c(rng), a1 = gaussian_c(rng);
  complex<double> b0 = gaussian_c(rng), b1 = gaussian_c(rng);
  SpinCoefficients c{a0 * b0, a0 * b1, a1 * b0, a1 * b1};
  return normalize(c);
}

}  // namespace spincorr
