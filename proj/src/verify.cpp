#include "spincorr/verify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "spincorr/local_ops.hpp"
#include "spincorr/tensor.hpp"

namespace spincorr {

namespace {

double max_abs(const Eigen::Matrix3d& m) { return m.cwiseAbs().maxCoeff(); }

int kraus_count(SplitMix64& rng) { return 2 + static_cast<int>(rng.next() % 3); }

}  // namespace

SuiteResult run_lu_suite(int trials, uint64_t seed) {
  SplitMix64 rng(seed);
  CheckResult drift{"E invariance", trials, 0.0, 1e-9};
  CheckResult cov{"tensor covariance", trials, 0.0, 1e-10};
  CheckResult pcov{"product tensor covariance", trials, 0.0, 1e-10};

  for (int k = 0; k < trials; ++k) {
    DensityMatrix4 rho = density_matrix(random_state(rng));
    LocalUnitary u1 = random_local_unitary(rng);
    LocalUnitary u2 = random_local_unitary(rng);
    DensityMatrix4 rho2 = apply_local_unitaries(rho, u1, u2);

    drift.max_deviation =
        std::max(drift.max_deviation,
                 std::abs(entanglement_measure(rho2) - entanglement_measure(rho)));

    Eigen::Matrix3d q1 = q_matrix(u1).m;
    Eigen::Matrix3d q2 = q_matrix(u2).m;
    Eigen::Matrix3d t = correlation_tensor_trace(rho).t;
    Eigen::Matrix3d t2 = correlation_tensor_trace(rho2).t;
    cov.max_deviation = std::max(cov.max_deviation, max_abs(t2 - q1 * t * q2.transpose()));

    auto outer = [](const DensityMatrix4& r) {
      return (polarization_trace(r, Particle::First).p *
              polarization_trace(r, Particle::Second).p.transpose())
          .eval();
    };
    pcov.max_deviation =
        std::max(pcov.max_deviation, max_abs(outer(rho2) - q1 * outer(rho) * q2.transpose()));
  }
  return {"lu", {drift, cov, pcov}, {}};
}

SuiteResult run_q_orth_suite(int trials, uint64_t seed) {
  SplitMix64 rng(seed);
  CheckResult orth{"Q orthogonality", trials, 0.0, 1e-10};
  CheckResult det{"det(Q) = +1", trials, 0.0, 1e-10};
  CheckResult comp{"composition order", trials, 0.0, 1e-10};

  for (int k = 0; k < trials; ++k) {
    LocalUnitary u = random_local_unitary(rng);
    LocalUnitary v = random_local_unitary(rng);
    Eigen::Matrix3d qu = q_matrix(u).m;
    Eigen::Matrix3d qv = q_matrix(v).m;

    orth.max_deviation =
        std::max(orth.max_deviation,
                 max_abs(qu * qu.transpose() - Eigen::Matrix3d::Identity()));
    det.max_deviation = std::max(det.max_deviation, std::abs(qu.determinant() - 1.0));

    // (u v) sigma (u v)† expands inner first: Q(u v) = Q(v) Q(u).
    Eigen::Matrix3d quv = q_matrix({u.u * v.u}).m;
    comp.max_deviation = std::max(comp.max_deviation, max_abs(quv - qv * qu));
  }
  return {"q-orth", {orth, det, comp}, {}};
}

SuiteResult run_povm_suite(int trials, uint64_t seed) {
  SplitMix64 rng(seed);
  CheckResult growth{"E non-growth", trials, 0.0, 1e-9};
  CheckResult valid{"output density matrix", trials, 0.0, 1e-10};
  CheckResult cov{"contraction covariance", trials, 0.0, 1e-10};

  for (int k = 0; k < trials; ++k) {
    DensityMatrix4 rho = density_matrix(random_state(rng));
    KrausSet k1 = random_kraus_set(rng, kraus_count(rng));
    KrausSet k2 = random_kraus_set(rng, kraus_count(rng));
    DensityMatrix4 rho2 = apply_local_povm(rho, k1, k2);

    growth.max_deviation =
        std::max(growth.max_deviation,
                 entanglement_measure(rho2) - entanglement_measure(rho));

    double herm = (rho2.m - rho2.m.adjoint()).cwiseAbs().maxCoeff();
    double tr = std::abs(rho2.m.trace() - std::complex<double>(1.0));
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho2.m, Eigen::EigenvaluesOnly);
    double neg = std::max(0.0, -es.eigenvalues().minCoeff());
    valid.max_deviation = std::max({valid.max_deviation, herm, tr, neg});

    Eigen::Matrix3d d1 = d_matrix(k1).m;
    Eigen::Matrix3d d2 = d_matrix(k2).m;
    Eigen::Matrix3d t = correlation_tensor_trace(rho).t;
    Eigen::Matrix3d t2 = correlation_tensor_trace(rho2).t;
    cov.max_deviation = std::max(cov.max_deviation, max_abs(t2 - d1 * t * d2.transpose()));
  }
  // Non-growth is one-sided; negative drift is fine, so clamp for reporting.
  growth.max_deviation = std::max(growth.max_deviation, 0.0);
  return {"povm", {growth, valid, cov}, {}};
}

SuiteResult run_d_contract_suite(int trials, uint64_t seed) {
  SplitMix64 rng(seed);
  CheckResult contract{"contractivity", trials, 0.0, 1e-10};
  CheckResult commute{"D D^T commutation", trials, 0.0, 1e-10};
  CheckResult transpose{"transpose identity", trials, 0.0, 1e-10};

  for (int k = 0; k < trials; ++k) {
    KrausSet ks = random_kraus_set(rng, kraus_count(rng));
    Eigen::Matrix3d d = d_matrix(ks).m;

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(d.transpose() * d, Eigen::EigenvaluesOnly);
    contract.max_deviation =
        std::max(contract.max_deviation, std::max(0.0, es.eigenvalues().maxCoeff() - 1.0));
    commute.max_deviation =
        std::max(commute.max_deviation, max_abs(d * d.transpose() - d.transpose() * d));
    transpose.max_deviation = std::max(transpose.max_deviation, d_transpose_residue(ks));
  }
  return {"d-contract", {contract, commute, transpose}, {}};
}

SuiteResult run_sigma_eig_suite() {
  CheckResult eig{"eigenvalues are {-1, -1, +1, +1}", 9, 0.0, 1e-12};
  SuiteResult out{"sigma-eig", {}, {}};
  const double target[4] = {-1.0, -1.0, 1.0, 1.0};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      auto ev = sigma_pair_eigenvalues(static_cast<Axis>(i), static_cast<Axis>(j));
      std::string line = std::string("(") + axis_name(static_cast<Axis>(i)) + ", " +
                         axis_name(static_cast<Axis>(j)) + "): [";
      for (int k = 0; k < 4; ++k) {
        eig.max_deviation = std::max(eig.max_deviation, std::abs(ev[k] - target[k]));
        line += (ev[k] < 0 ? "-1" : "+1");
        if (k < 3) line += ", ";
      }
      out.detail.push_back(line + "]");
    }
  out.checks.push_back(eig);
  return out;
}

}  // namespace spincorr
