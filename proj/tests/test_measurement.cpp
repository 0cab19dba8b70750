#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "spincorr/errors.hpp"
#include "spincorr/measurement.hpp"
#include "spincorr/state.hpp"
#include "spincorr/tensor.hpp"

using namespace spincorr;
using std::complex;

namespace {

DensityMatrix4 singlet_rho() { return density_matrix(bell_state(BellKind::Singlet)); }

// |+x>|+x>: every coefficient 1/2.
DensityMatrix4 plus_plus_rho() {
  SpinCoefficients c;
  c.c_pp = c.c_pm = c.c_mp = c.c_mm = 0.5;
  return density_matrix(TwoElectronState{c});
}

DensityMatrix4 maximally_mixed() {
  DensityMatrix4 rho;
  rho.m = Eigen::Matrix4cd::Identity() * 0.25;
  return rho;
}

OutcomeTable table_from(Axis i, Axis j, std::vector<int> a, std::vector<int> b) {
  OutcomeTable t;
  t.axis1 = i;
  t.axis2 = j;
  for (int v : a) t.s1.push_back(static_cast<int8_t>(v));
  for (int v : b) t.s2.push_back(static_cast<int8_t>(v));
  return t;
}

constexpr Axis kAxes[3] = {Axis::X, Axis::Y, Axis::Z};

}  // namespace

TEST_CASE("joint outcome probabilities for reference states") {
  auto p = outcome_distribution(singlet_rho(), Axis::Z, Axis::Z);
  CHECK(std::abs(p[0]) < 1e-14);
  CHECK(p[1] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(p[2] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std::abs(p[3]) < 1e-14);

  // Same state is anti-correlated along every common axis.
  for (Axis a : kAxes) {
    auto q = outcome_distribution(singlet_rho(), a, a);
    CHECK(std::abs(q[0]) < 1e-14);
    CHECK(std::abs(q[3]) < 1e-14);
  }

  auto r = outcome_distribution(plus_plus_rho(), Axis::X, Axis::X);
  CHECK(r[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(r[1]) + std::abs(r[2]) + std::abs(r[3]) < 1e-13);

  for (Axis a : kAxes)
    for (Axis b : kAxes) {
      auto u = outcome_distribution(maximally_mixed(), a, b);
      for (double v : u) CHECK(v == doctest::Approx(0.25).epsilon(1e-14));
    }
}

TEST_CASE("outcome probabilities reproduce tensor and polarization moments") {
  SplitMix64 rng(314);
  for (int trial = 0; trial < 50; ++trial) {
    TwoElectronState s = random_state(rng);
    DensityMatrix4 rho = density_matrix(s);
    CorrelationTensor t = correlation_tensor_closed(s);
    Polarization p1 = polarization(s, Particle::First);
    Polarization p2 = polarization(s, Particle::Second);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        auto p = outcome_distribution(rho, kAxes[i], kAxes[j]);
        double sum = p[0] + p[1] + p[2] + p[3];
        double m12 = p[0] - p[1] - p[2] + p[3];
        double m1 = p[0] + p[1] - p[2] - p[3];
        double m2 = p[0] - p[1] + p[2] - p[3];
        CHECK(std::abs(sum - 1.0) < 1e-12);
        CHECK(std::abs(m12 - t.t(i, j)) < 1e-12);
        CHECK(std::abs(m1 - p1.p(i)) < 1e-12);
        CHECK(std::abs(m2 - p2.p(j)) < 1e-12);
      }
  }
}

TEST_CASE("invalid density input is rejected") {
  DensityMatrix4 bad;
  bad.m = Eigen::Matrix4cd::Zero();
  bad.m(0, 1) = complex<double>(0, 0.3);  // not hermitian
  bad.m(0, 0) = 1.0;
  // Along x the projectors mix in the off-diagonal entry and expose the
  // imaginary residue; along z it would never enter the traces.
  CHECK_THROWS_AS(outcome_distribution(bad, Axis::X, Axis::X), NonHermitianInput);
}

TEST_CASE("sampled singlet tables are perfectly anti-aligned") {
  for (Axis a : kAxes) {
    OutcomeTable t = sample_table(singlet_rho(), a, a, 4096, 99);
    REQUIRE(t.rows() == 4096);
    for (size_t k = 0; k < t.rows(); ++k) CHECK(int(t.s1[k]) == -int(t.s2[k]));
  }
}

TEST_CASE("sampling is deterministic in the seed") {
  OutcomeTable a = sample_table(singlet_rho(), Axis::X, Axis::Y, 1000, 7);
  OutcomeTable b = sample_table(singlet_rho(), Axis::X, Axis::Y, 1000, 7);
  OutcomeTable c = sample_table(singlet_rho(), Axis::X, Axis::Y, 1000, 8);
  CHECK(a.s1 == b.s1);
  CHECK(a.s2 == b.s2);
  CHECK(a.s1 != c.s1);
}

TEST_CASE("deterministic outcomes sample without noise") {
  OutcomeTable t = sample_table(plus_plus_rho(), Axis::X, Axis::X, 100000, 3);
  for (size_t k = 0; k < t.rows(); ++k) {
    CHECK(int(t.s1[k]) == 1);
    CHECK(int(t.s2[k]) == 1);
  }
}

TEST_CASE("pooled columns concatenate rows and columns of the grid") {
  DataMatrix data;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      data.tables[i][j] = sample_table(singlet_rho(), kAxes[i], kAxes[j], 100, 3 * i + j);

  auto cols = pool_columns(data);
  for (const PooledColumn& col : cols) CHECK(col.count() == 300);

  // First particle's x column = s1 of tables (x,x), (x,y), (x,z) in order.
  const PooledColumn* p1x = nullptr;
  for (const PooledColumn& col : cols)
    if (col.particle == Particle::First && col.axis == Axis::X) p1x = &col;
  REQUIRE(p1x != nullptr);
  std::vector<int8_t> expect;
  for (int j = 0; j < 3; ++j)
    expect.insert(expect.end(), data.tables[0][j].s1.begin(), data.tables[0][j].s1.end());
  CHECK(p1x->values == expect);

  const PooledColumn* p2z = nullptr;
  for (const PooledColumn& col : cols)
    if (col.particle == Particle::Second && col.axis == Axis::Z) p2z = &col;
  REQUIRE(p2z != nullptr);
  expect.clear();
  for (int i = 0; i < 3; ++i)
    expect.insert(expect.end(), data.tables[i][2].s2.begin(), data.tables[i][2].s2.end());
  CHECK(p2z->values == expect);

  size_t n1 = 0, n2 = 0, grid = 0;
  for (const PooledColumn& col : cols)
    (col.particle == Particle::First ? n1 : n2) += col.count();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) grid += data.tables[i][j].rows();
  CHECK(n1 == grid);
  CHECK(n2 == grid);
}

TEST_CASE("balanced hand-built data estimates exactly") {
  DataMatrix data;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      // 50 rows (+1,-1) then 50 rows (-1,+1): products all -1, means all 0.
      std::vector<int> a(50, 1), b(50, -1);
      a.insert(a.end(), 50, -1);
      b.insert(b.end(), 50, 1);
      data.tables[i][j] = table_from(kAxes[i], kAxes[j], a, b);
    }
  EstimationReport rep = estimate(data, 0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CHECK(rep.t_hat.t(i, j) == -1.0);
      CHECK(rep.counts[i][j] == 100);
    }
  CHECK(rep.p1_hat.p.norm() == 0.0);
  CHECK(rep.p2_hat.p.norm() == 0.0);
  // All nine products are -1, so the estimated tensor is the all-(-1) matrix.
  CHECK(rep.e_hat == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  CHECK(rep.e_stderr == 0.0);
  CHECK(rep.boot_replicates == 0);
}

TEST_CASE("empty tables are refused") {
  DataMatrix data;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      data.tables[i][j] = sample_table(singlet_rho(), kAxes[i], kAxes[j], 10, 3 * i + j);
  data.tables[1][2] = OutcomeTable{kAxes[1], kAxes[2], {}, {}};
  CHECK_THROWS_AS(estimate(data), EmptyTable);
}

TEST_CASE("large-sample estimates approach the exact values") {
  EstimationReport rep = run_experiment(singlet_rho(), 100000, 42, 0);
  CHECK(std::abs(rep.e_hat - 1.0) < 0.03);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double expect = (i == j) ? -1.0 : 0.0;
      CHECK(std::abs(rep.t_hat.t(i, j) - expect) < 0.02);
      CHECK(rep.counts[i][j] == 100000);
    }
  CHECK(rep.p1_hat.p.cwiseAbs().maxCoeff() < 0.02);

  EstimationReport prod = run_experiment(plus_plus_rho(), 100000, 43, 0);
  CHECK(prod.e_hat < 0.03);
}

TEST_CASE("single-shot experiment yields sign-valued entries") {
  SplitMix64 rng(5);
  TwoElectronState s = random_state(rng);
  EstimationReport rep = run_experiment(density_matrix(s), 1, 77, 0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double v = rep.t_hat.t(i, j);
      CHECK((v == 1.0 || v == -1.0));
      CHECK(rep.counts[i][j] == 1);
    }
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(rep.p1_hat.p(i)) <= 1.0);
    CHECK(std::abs(rep.p2_hat.p(i)) <= 1.0);
  }
}

TEST_CASE("tensor estimator is unbiased at scale") {
  SplitMix64 pick(2024);
  TwoElectronState s = random_state(pick);
  CorrelationTensor exact = correlation_tensor_closed(s);
  DensityMatrix4 rho = density_matrix(s);

  const int n_seeds = 50;
  const size_t m = 10000;
  Eigen::Matrix3d mean = Eigen::Matrix3d::Zero();
  for (int k = 0; k < n_seeds; ++k) {
    EstimationReport rep = run_experiment(rho, m, 1000 + k, 0);
    mean += rep.t_hat.t;
  }
  mean /= double(n_seeds);
  double bound = 5.0 / std::sqrt(double(n_seeds) * double(m));
  CHECK((mean - exact.t).cwiseAbs().maxCoeff() < bound);
}

TEST_CASE("pooled polarization equals the count-weighted table means") {
  DensityMatrix4 rho = singlet_rho();
  DataMatrix data;
  // Deliberately unequal table sizes.
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      data.tables[i][j] = sample_table(rho, kAxes[i], kAxes[j], 100 + 37 * (3 * i + j), 3 * i + j);
  EstimationReport rep = estimate(data, 0);

  for (int i = 0; i < 3; ++i) {
    double num = 0.0, den = 0.0;
    for (int j = 0; j < 3; ++j) {
      const OutcomeTable& t = data.tables[i][j];
      for (int8_t v : t.s1) num += v;
      den += double(t.rows());
    }
    CHECK(std::abs(rep.p1_hat.p(i) - num / den) < 1e-12);
  }
  for (int j = 0; j < 3; ++j) {
    double num = 0.0, den = 0.0;
    for (int i = 0; i < 3; ++i) {
      const OutcomeTable& t = data.tables[i][j];
      for (int8_t v : t.s2) num += v;
      den += double(t.rows());
    }
    CHECK(std::abs(rep.p2_hat.p(j) - num / den) < 1e-12);
  }
}

TEST_CASE("estimates always stay in the physical range") {
  SplitMix64 rng(808);
  for (int trial = 0; trial < 20; ++trial) {
    TwoElectronState s = random_state(rng);
    EstimationReport rep = run_experiment(density_matrix(s), 23, 9000 + trial, 0);
    CHECK(rep.t_hat.t.cwiseAbs().maxCoeff() <= 1.0);
    CHECK(rep.p1_hat.p.cwiseAbs().maxCoeff() <= 1.0);
    CHECK(rep.p2_hat.p.cwiseAbs().maxCoeff() <= 1.0);
    CHECK(rep.e_hat >= 0.0);
  }
}

TEST_CASE("bootstrap error is deterministic in its seed and scales with m") {
  DensityMatrix4 rho = singlet_rho();

  EstimationReport a = run_experiment(rho, 2000, 11, 200, 555);
  EstimationReport b = run_experiment(rho, 2000, 11, 200, 555);
  EstimationReport c = run_experiment(rho, 2000, 11, 200, 556);
  CHECK(a.e_stderr == b.e_stderr);
  CHECK(a.e_hat == b.e_hat);
  CHECK(a.e_stderr != c.e_stderr);
  CHECK(a.boot_seed == 555);
  CHECK(a.boot_replicates == 200);
  CHECK(a.e_stderr > 0.0);

  // Quadrupling the sample size should roughly halve the bootstrap error.
  // The singlet's exact +-1 entries are immune to noise, so probe a state
  // with genuinely stochastic outcomes.
  SpinCoefficients cs;
  cs.c_pp = std::cos(M_PI / 8);
  cs.c_mm = std::sin(M_PI / 8);
  cs.c_pm = cs.c_mp = 0.0;
  DensityMatrix4 mixed_axis = density_matrix(TwoElectronState{cs});
  EstimationReport small = run_experiment(mixed_axis, 1000, 21, 200, 1);
  EstimationReport large = run_experiment(mixed_axis, 16000, 21, 200, 1);
  CHECK(large.e_stderr < small.e_stderr);
  double ratio = small.e_stderr / large.e_stderr;  // expect about 4
  CHECK(ratio > 2.0);
  CHECK(ratio < 8.0);
}

TEST_CASE("report counts reconstruct the outcome frequencies") {
  DensityMatrix4 rho = singlet_rho();
  size_t m = 5000;
  EstimationReport rep = run_experiment(rho, m, 13, 0);
  // (1/m) sum s1 s2 from the zz table must equal t_hat[z][z]: re-sample the
  // same substream and recompute by hand.
  OutcomeTable t = sample_table(rho, Axis::Z, Axis::Z, m, table_stream_seed(13, Axis::Z, Axis::Z));
  double acc = 0.0;
  for (size_t k = 0; k < m; ++k) acc += double(t.s1[k]) * double(t.s2[k]);
  CHECK(rep.t_hat.t(2, 2) == doctest::Approx(acc / double(m)).epsilon(1e-15));
}
