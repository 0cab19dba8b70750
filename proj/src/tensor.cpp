#include "spincorr/tensor.hpp"

#include <cmath>

#include "spincorr/errors.hpp"

namespace spincorr {

using std::complex;
using std::conj;

CorrelationTensor correlation_tensor_closed(const TwoElectronState& s) {
  const complex<double> cpp = s.c.c_pp, cpm = s.c.c_pm, cmp = s.c.c_mp, cmm = s.c.c_mm;

  const complex<double> a = cmm * conj(cpp) + cpm * conj(cmp);  // xx / xy pair
  const complex<double> b = cmm * conj(cpp) + cmp * conj(cpm);  // yx entry
  const complex<double> g = cmp * conj(cpp) - cmm * conj(cpm);  // xz / yz pair
  const complex<double> h = cpm * conj(cpp) - cmm * conj(cmp);  // zx / zy pair

  Eigen::Matrix3d t;
  t(0, 0) = 2.0 * a.real();
  t(0, 1) = 2.0 * a.imag();
  t(0, 2) = 2.0 * g.real();
  t(1, 0) = 2.0 * b.imag();
  t(1, 1) = 2.0 * (cmp * conj(cpm) - cmm * conj(cpp)).real();
  t(1, 2) = 2.0 * g.imag();
  t(2, 0) = 2.0 * h.real();
  t(2, 1) = 2.0 * h.imag();
  t(2, 2) = std::norm(cpp) - std::norm(cpm) - std::norm(cmp) + std::norm(cmm);
  return {t};
}

static double real_trace_or_throw(const complex<double>& tr, const char* what) {
  if (std::abs(tr.imag()) > 1e-10)
    throw NonHermitianInput(std::string(what) + " has imaginary residue " +
                            std::to_string(tr.imag()));
  return tr.real();
}

CorrelationTensor correlation_tensor_trace(const DensityMatrix4& rho) {
  Eigen::Matrix3d t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      complex<double> tr = (rho.m * sigma_pair(static_cast<Axis>(i), static_cast<Axis>(j))).trace();
      t(i, j) = real_trace_or_throw(tr, "correlation trace");
    }
  return {t};
}

Polarization polarization(const TwoElectronState& s, Particle which) {
  const complex<double> cpp = s.c.c_pp, cpm = s.c.c_pm, cmp = s.c.c_mp, cmm = s.c.c_mm;
  Eigen::Vector3d p;
  if (which == Particle::First) {
    complex<double> a = cmp * conj(cpp) + cmm * conj(cpm);
    p << 2.0 * a.real(), 2.0 * a.imag(),
        std::norm(cpp) + std::norm(cpm) - std::norm(cmp) - std::norm(cmm);
  } else {
    complex<double> a = cpm * conj(cpp) + cmm * conj(cmp);
    p << 2.0 * a.real(), 2.0 * a.imag(),
        std::norm(cpp) - std::norm(cpm) + std::norm(cmp) - std::norm(cmm);
  }
  return {p};
}

Polarization polarization_trace(const DensityMatrix4& rho, Particle which) {
  Eigen::Vector3d p;
  for (int i = 0; i < 3; ++i) {
    Eigen::Matrix4cd op = which == Particle::First
                              ? kron(pauli(static_cast<Axis>(i)), identity2())
                              : kron(identity2(), pauli(static_cast<Axis>(i)));
    p(i) = real_trace_or_throw((rho.m * op).trace(), "polarization trace");
  }
  return {p};
}

CorrelationTensor product_tensor(const Polarization& p1, const Polarization& p2) {
  return {p1.p * p2.p.transpose()};
}

double tensor_norm(const CorrelationTensor& t) {
  return std::sqrt(t.t.squaredNorm() / 3.0);
}

double entanglement_measure(const TwoElectronState& s) {
  CorrelationTensor t = correlation_tensor_closed(s);
  CorrelationTensor tp = product_tensor(polarization(s, Particle::First),
                                        polarization(s, Particle::Second));
  return tensor_norm({t.t - tp.t});
}

double entanglement_measure(const DensityMatrix4& rho) {
  CorrelationTensor t = correlation_tensor_trace(rho);
  CorrelationTensor tp = product_tensor(polarization_trace(rho, Particle::First),
                                        polarization_trace(rho, Particle::Second));
  return tensor_norm({t.t - tp.t});
}

double swap_symmetry_residue(const TwoElectronState& s) {
  TwoElectronState sw{{s.c.c_pp, s.c.c_mp, s.c.c_pm, s.c.c_mm}};
  double r = (correlation_tensor_closed(sw).t - correlation_tensor_closed(s).t.transpose())
                 .cwiseAbs()
                 .maxCoeff();
  r = std::max(r, (polarization(sw, Particle::First).p - polarization(s, Particle::Second).p)
                      .cwiseAbs()
                      .maxCoeff());
  r = std::max(r, (polarization(sw, Particle::Second).p - polarization(s, Particle::First).p)
                      .cwiseAbs()
                      .maxCoeff());
  return r;
}

}  // namespace spincorr
