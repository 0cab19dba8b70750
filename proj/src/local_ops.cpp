#include "spincorr/local_ops.hpp"

#include <cmath>
#include <string>

#include "spincorr/errors.hpp"

namespace spincorr {

using std::complex;

void LocalUnitary::validate(double tol) const {
  double r = (u * u.adjoint() - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
  r = std::max(r, (u.adjoint() * u - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff());
  if (r > tol) throw NotUnitary("unitarity residue " + std::to_string(r));
}

void KrausSet::validate(double tol) const {
  if (ops.empty()) throw InvalidKrausSet("empty Kraus set");
  Eigen::Matrix2cd sum = Eigen::Matrix2cd::Zero();
  for (const auto& l : ops) {
    sum += l * l.adjoint();
    double nr = (l * l.adjoint() - l.adjoint() * l).cwiseAbs().maxCoeff();
    if (nr > tol) throw InvalidKrausSet("operator not normal, residue " + std::to_string(nr));
  }
  double cr = (sum - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
  if (cr > tol) throw InvalidKrausSet("completeness residue " + std::to_string(cr));
}

DensityMatrix4 apply_local_unitaries(const DensityMatrix4& rho, const LocalUnitary& u1,
                                     const LocalUnitary& u2) {
  u1.validate();
  u2.validate();
  Eigen::Matrix4cd u = kron(u1.u, u2.u);
  return {u.adjoint() * rho.m * u};
}

DensityMatrix4 apply_local_povm(const DensityMatrix4& rho, const KrausSet& k1,
                                const KrausSet& k2) {
  k1.validate();
  k2.validate();
  Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
  for (const auto& lm : k1.ops)
    for (const auto& ln : k2.ops) {
      Eigen::Matrix4cd op = kron(lm, ln);
      out += op * rho.m * op.adjoint();
    }
  return {out};
}

static Eigen::Matrix3d bloch_project(const std::array<Eigen::Matrix2cd, 3>& images) {
  // Coefficients against the Pauli basis; Tr(sigma_j sigma_k) = 2 delta_jk.
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      m(i, j) = 0.5 * (images[i] * pauli(static_cast<Axis>(j))).trace().real();
  return m;
}

BlochMap q_matrix(const LocalUnitary& u) {
  u.validate();
  std::array<Eigen::Matrix2cd, 3> img;
  for (int i = 0; i < 3; ++i) img[i] = u.u * pauli(static_cast<Axis>(i)) * u.u.adjoint();
  return {bloch_project(img), BlochMapKind::Orthogonal};
}

BlochMap d_matrix(const KrausSet& k) {
  k.validate();
  std::array<Eigen::Matrix2cd, 3> img;
  for (int i = 0; i < 3; ++i) {
    img[i] = Eigen::Matrix2cd::Zero();
    for (const auto& l : k.ops) img[i] += l.adjoint() * pauli(static_cast<Axis>(i)) * l;
  }
  return {bloch_project(img), BlochMapKind::Contraction};
}

double d_transpose_residue(const KrausSet& k) {
  Eigen::Matrix3d dt = d_matrix(k).m.transpose();
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    Eigen::Matrix2cd lhs = Eigen::Matrix2cd::Zero();
    for (const auto& l : k.ops) lhs += l * pauli(static_cast<Axis>(i)) * l.adjoint();
    Eigen::Matrix2cd rhs = Eigen::Matrix2cd::Zero();
    for (int j = 0; j < 3; ++j) rhs += dt(i, j) * pauli(static_cast<Axis>(j));
    worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  return worst;
}

std::array<double, 4> sigma_pair_eigenvalues(Axis i, Axis j) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(sigma_pair(i, j), Eigen::EigenvaluesOnly);
  std::array<double, 4> out;
  for (int k = 0; k < 4; ++k) out[k] = es.eigenvalues()(k);
  return out;
}

LocalUnitary random_local_unitary(SplitMix64& rng) {
  auto [a, b] = rng.next_gaussian_pair();
  auto [c, d] = rng.next_gaussian_pair();
  complex<double> g0(a, b), g1(c, d);
  double n = std::sqrt(std::norm(g0) + std::norm(g1));
  g0 /= n;
  g1 /= n;
  // First column uniform on the 3-sphere, second its orthogonal partner
  // with an independent uniform phase: together Haar on U(2).
  complex<double> phase = std::polar(1.0, 2.0 * M_PI * rng.next_unit());
  Eigen::Matrix2cd u;
  u << g0, -std::conj(g1) * phase, g1, std::conj(g0) * phase;
  return {u};
}

KrausSet random_kraus_set(SplitMix64& rng, int count) {
  constexpr int kMaxAttempts = 16;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Eigen::Matrix2cd v = random_local_unitary(rng).u;
    std::vector<Eigen::Vector2cd> diags(static_cast<size_t>(count));
    Eigen::Vector2d col_power = Eigen::Vector2d::Zero();
    for (auto& d : diags)
      for (int k = 0; k < 2; ++k) {
        auto [re, im] = rng.next_gaussian_pair();
        d(k) = complex<double>(re, im);
        col_power(k) += std::norm(d(k));
      }
    if (col_power.minCoeff() < 1e-12) continue;  // cannot rescale this draw

    // sum_n |lambda_nk|^2 = 1 for each eigenvector k gives completeness.
    KrausSet set;
    for (const auto& d : diags) {
      Eigen::Vector2cd scaled(d(0) / std::sqrt(col_power(0)), d(1) / std::sqrt(col_power(1)));
      set.ops.push_back(v * scaled.asDiagonal() * v.adjoint());
    }
    set.validate();
    return set;
  }
  throw GenerationFailure("kraus rescaling failed after bounded retries");
}

}  // namespace spincorr
