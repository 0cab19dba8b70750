#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "spincorr/errors.hpp"
#include "spincorr/local_ops.hpp"
#include "spincorr/tensor.hpp"

using namespace spincorr;
using std::complex;

namespace {

KrausSet dephasing_set(double p) {
  KrausSet k;
  k.ops.push_back(std::sqrt(p) * Eigen::Matrix2cd::Identity());
  k.ops.push_back(std::sqrt(1.0 - p) * pauli(Axis::Z));
  return k;
}

LocalUnitary z_rotation(double angle) {
  Eigen::Matrix2cd u = Eigen::Matrix2cd::Zero();
  u(0, 0) = std::polar(1.0, -angle / 2);
  u(1, 1) = std::polar(1.0, angle / 2);
  return {u};
}

}  // namespace

TEST_CASE("unitary and kraus validation") {
  LocalUnitary id{Eigen::Matrix2cd::Identity()};
  id.validate();
  LocalUnitary bad{2.0 * Eigen::Matrix2cd::Identity()};
  CHECK_THROWS_AS(bad.validate(), NotUnitary);

  dephasing_set(0.75).validate();
  KrausSet incomplete;
  incomplete.ops.push_back(0.5 * Eigen::Matrix2cd::Identity());
  CHECK_THROWS_AS(incomplete.validate(), InvalidKrausSet);

  KrausSet non_normal;  // a nilpotent operator completed to sum LL† = I
  Eigen::Matrix2cd l = Eigen::Matrix2cd::Zero();
  l(0, 1) = 1.0;
  non_normal.ops.push_back(l);
  Eigen::Matrix2cd rest = Eigen::Matrix2cd::Zero();
  rest(1, 1) = 1.0;
  non_normal.ops.push_back(rest);
  CHECK_THROWS_AS(non_normal.validate(), InvalidKrausSet);
}

TEST_CASE("identity operations leave the state alone") {
  DensityMatrix4 rho = density_matrix(bell_state(BellKind::Singlet));
  LocalUnitary id{Eigen::Matrix2cd::Identity()};
  CHECK((apply_local_unitaries(rho, id, id).m - rho.m).cwiseAbs().maxCoeff() < 1e-15);

  KrausSet kid;
  kid.ops.push_back(Eigen::Matrix2cd::Identity());
  CHECK((apply_local_povm(rho, kid, kid).m - rho.m).cwiseAbs().maxCoeff() < 1e-15);

  CHECK((q_matrix(id).m - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((d_matrix(kid).m - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("local unitaries preserve trace and the measure") {
  SplitMix64 rng(7);
  for (int k = 0; k < 300; ++k) {
    DensityMatrix4 rho = density_matrix(random_state(rng));
    LocalUnitary u1 = random_local_unitary(rng);
    LocalUnitary u2 = random_local_unitary(rng);
    DensityMatrix4 rho2 = apply_local_unitaries(rho, u1, u2);
    CHECK(std::abs(rho2.m.trace() - complex<double>(1.0)) < 1e-12);
    CHECK(std::abs(entanglement_measure(rho2) - entanglement_measure(rho)) < 1e-9);
  }
}

TEST_CASE("tensor covariance under local unitaries") {
  SplitMix64 rng(13);
  for (int k = 0; k < 200; ++k) {
    DensityMatrix4 rho = density_matrix(random_state(rng));
    LocalUnitary u1 = random_local_unitary(rng);
    LocalUnitary u2 = random_local_unitary(rng);
    Eigen::Matrix3d t2 = correlation_tensor_trace(apply_local_unitaries(rho, u1, u2)).t;
    Eigen::Matrix3d expect =
        q_matrix(u1).m * correlation_tensor_trace(rho).t * q_matrix(u2).m.transpose();
    CHECK((t2 - expect).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("q matrix of a z rotation is the matching bloch rotation") {
  double angle = M_PI / 3;
  Eigen::Matrix3d q = q_matrix(z_rotation(angle)).m;
  // u sigma_x u† = cos(angle) sigma_x + sin(angle) sigma_y for
  // u = exp(-i angle/2 sigma_z), which fixes the sign of the off-diagonals.
  Eigen::Matrix3d expect;
  expect << std::cos(angle), std::sin(angle), 0, -std::sin(angle), std::cos(angle), 0, 0, 0, 1;
  CHECK((q - expect).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("q matrices are special orthogonal and compose in reverse") {
  SplitMix64 rng(21);
  for (int k = 0; k < 300; ++k) {
    LocalUnitary u = random_local_unitary(rng);
    LocalUnitary v = random_local_unitary(rng);
    Eigen::Matrix3d qu = q_matrix(u).m, qv = q_matrix(v).m;
    CHECK((qu * qu.transpose() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(std::abs(qu.determinant() - 1.0) < 1e-10);
    CHECK((q_matrix({u.u * v.u}).m - qv * qu).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("povm channel output is a density matrix and never grows E") {
  SplitMix64 rng(37);
  for (int k = 0; k < 200; ++k) {
    DensityMatrix4 rho = density_matrix(random_state(rng));
    KrausSet k1 = random_kraus_set(rng, 2 + static_cast<int>(rng.next() % 3));
    KrausSet k2 = random_kraus_set(rng, 2 + static_cast<int>(rng.next() % 3));
    DensityMatrix4 rho2 = apply_local_povm(rho, k1, k2);
    CHECK(std::abs(rho2.m.trace() - complex<double>(1.0)) < 1e-10);
    rho2.validate(1e-10, 1e-10);
    CHECK(entanglement_measure(rho2) <= entanglement_measure(rho) + 1e-9);
  }
}

TEST_CASE("contraction covariance under povm channels") {
  SplitMix64 rng(43);
  for (int k = 0; k < 100; ++k) {
    DensityMatrix4 rho = density_matrix(random_state(rng));
    KrausSet k1 = random_kraus_set(rng, 3);
    KrausSet k2 = random_kraus_set(rng, 2);
    Eigen::Matrix3d t2 = correlation_tensor_trace(apply_local_povm(rho, k1, k2)).t;
    Eigen::Matrix3d expect =
        d_matrix(k1).m * correlation_tensor_trace(rho).t * d_matrix(k2).m.transpose();
    CHECK((t2 - expect).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("dephasing channel has the known D and shrinks the singlet") {
  KrausSet k = dephasing_set(0.75);
  Eigen::Matrix3d d = d_matrix(k).m;
  Eigen::Matrix3d expect = Eigen::Vector3d(0.5, 0.5, 1.0).asDiagonal();
  CHECK((d - expect).cwiseAbs().maxCoeff() < 1e-14);

  DensityMatrix4 rho = density_matrix(bell_state(BellKind::Singlet));
  DensityMatrix4 rho2 = apply_local_povm(rho, k, k);
  double e0 = entanglement_measure(rho);
  double e1 = entanglement_measure(rho2);
  CHECK(e1 <= e0);
  // T' = D T D^T = diag(-1/4, -1/4, -1), so E' = sqrt((1/16 + 1/16 + 1) / 3).
  CHECK(e1 == doctest::Approx(std::sqrt(0.375)).epsilon(1e-12));
}

TEST_CASE("d matrices contract, commute with their transpose, and obey the transpose identity") {
  SplitMix64 rng(53);
  for (int k = 0; k < 300; ++k) {
    KrausSet ks = random_kraus_set(rng, 2 + static_cast<int>(rng.next() % 3));
    Eigen::Matrix3d d = d_matrix(ks).m;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(d.transpose() * d, Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().maxCoeff() <= 1.0 + 1e-10);
    CHECK((d * d.transpose() - d.transpose() * d).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(d_transpose_identity_check(ks));
  }
  CHECK(d_transpose_identity_check(dephasing_set(0.75)));
  KrausSet kid;
  kid.ops.push_back(Eigen::Matrix2cd::Identity());
  CHECK(d_transpose_identity_check(kid));
}

TEST_CASE("sigma pair eigenvalues are twice-degenerate +-1") {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      auto ev = sigma_pair_eigenvalues(static_cast<Axis>(i), static_cast<Axis>(j));
      CHECK(std::abs(ev[0] + 1.0) < 1e-12);
      CHECK(std::abs(ev[1] + 1.0) < 1e-12);
      CHECK(std::abs(ev[2] - 1.0) < 1e-12);
      CHECK(std::abs(ev[3] - 1.0) < 1e-12);
    }
}

TEST_CASE("generators are deterministic and always satisfy their invariants") {
  SplitMix64 a(61), b(61);
  LocalUnitary ua = random_local_unitary(a);
  LocalUnitary ub = random_local_unitary(b);
  CHECK((ua.u - ub.u).cwiseAbs().maxCoeff() == 0.0);
  KrausSet ka = random_kraus_set(a, 4);
  KrausSet kb = random_kraus_set(b, 4);
  REQUIRE(ka.ops.size() == kb.ops.size());
  for (size_t n = 0; n < ka.ops.size(); ++n)
    CHECK((ka.ops[n] - kb.ops[n]).cwiseAbs().maxCoeff() == 0.0);

  SplitMix64 rng(67);
  for (int k = 0; k < 1000; ++k) {
    random_local_unitary(rng).validate();
    random_kraus_set(rng, 2 + static_cast<int>(rng.next() % 3)).validate();
  }
}

TEST_CASE("apply operations validate their inputs") {
  DensityMatrix4 rho = density_matrix(bell_state(BellKind::TripletA));
  LocalUnitary bad{2.0 * Eigen::Matrix2cd::Identity()};
  LocalUnitary id{Eigen::Matrix2cd::Identity()};
  CHECK_THROWS_AS(apply_local_unitaries(rho, bad, id), NotUnitary);
  KrausSet incomplete;
  incomplete.ops.push_back(0.3 * Eigen::Matrix2cd::Identity());
  KrausSet kid;
  kid.ops.push_back(Eigen::Matrix2cd::Identity());
  CHECK_THROWS_AS(apply_local_povm(rho, incomplete, kid), InvalidKrausSet);
  CHECK_THROWS_AS(q_matrix(bad), NotUnitary);
  CHECK_THROWS_AS(d_matrix(incomplete), InvalidKrausSet);
}
