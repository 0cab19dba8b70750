#include "spincorr/measurement.hpp"

#include <cmath>
#include <string>

#include "spincorr/errors.hpp"
#include "spincorr/kernels.hpp"

namespace spincorr {

std::array<double, 4> outcome_distribution(const DensityMatrix4& rho, Axis i, Axis j) {
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  std::array<double, 4> p{};
  int idx = 0;
  double sum = 0.0;
  for (int s1 = +1; s1 >= -1; s1 -= 2)
    for (int s2 = +1; s2 >= -1; s2 -= 2) {
      Eigen::Matrix2cd pi1 = 0.5 * (id + static_cast<double>(s1) * pauli(i));
      Eigen::Matrix2cd pi2 = 0.5 * (id + static_cast<double>(s2) * pauli(j));
      std::complex<double> tr = (rho.m * kron(pi1, pi2)).trace();
      if (std::abs(tr.imag()) > 1e-10)
        throw NonHermitianInput("outcome probability has imaginary residue " +
                                std::to_string(tr.imag()));
      p[idx] = tr.real();
      if (p[idx] < -1e-12)
        throw NonHermitianInput("outcome probability " + std::to_string(p[idx]) +
                                " below tolerance");
      sum += p[idx];
      ++idx;
    }
  if (std::abs(sum - 1.0) > 1e-12)
    throw NonHermitianInput("outcome probabilities sum to " + std::to_string(sum));
  return p;
}

static std::array<double, 4> clamped(std::array<double, 4> p) {
  double sum = 0.0;
  for (double& v : p) {
    if (v < 0.0) v = 0.0;
    sum += v;
  }
  for (double& v : p) v /= sum;
  return p;
}

OutcomeTable sample_table(const DensityMatrix4& rho, Axis i, Axis j, size_t m, uint64_t seed) {
  auto thresholds = kernels::category_thresholds(clamped(outcome_distribution(rho, i, j)));
  OutcomeTable t;
  t.axis1 = i;
  t.axis2 = j;
  t.s1.resize(m);
  t.s2.resize(m);
  kernels::sample_outcomes(seed, m, thresholds, t.s1.data(), t.s2.data());
  return t;
}

std::array<PooledColumn, 6> pool_columns(const DataMatrix& data) {
  std::array<PooledColumn, 6> out;
  for (int a = 0; a < 3; ++a) {
    PooledColumn& c1 = out[a];
    c1.particle = Particle::First;
    c1.axis = static_cast<Axis>(a);
    for (int j = 0; j < 3; ++j) {
      const auto& t = data.tables[a][j];
      c1.values.insert(c1.values.end(), t.s1.begin(), t.s1.end());
    }
    PooledColumn& c2 = out[3 + a];
    c2.particle = Particle::Second;
    c2.axis = static_cast<Axis>(a);
    for (int i = 0; i < 3; ++i) {
      const auto& t = data.tables[i][a];
      c2.values.insert(c2.values.end(), t.s2.begin(), t.s2.end());
    }
  }
  return out;
}

namespace {

struct TableSums {
  uint64_t m = 0;
  int64_t s1 = 0, s2 = 0, s12 = 0;

  // Outcome counts in category order (+,+), (+,-), (-,+), (-,-). The sums
  // determine them: 4*n_pp = m + s1 + s2 + s12, etc.
  std::array<uint64_t, 4> counts() const {
    int64_t mm = static_cast<int64_t>(m);
    return {static_cast<uint64_t>((mm + s1 + s2 + s12) / 4),
            static_cast<uint64_t>((mm + s1 - s2 - s12) / 4),
            static_cast<uint64_t>((mm - s1 + s2 - s12) / 4),
            static_cast<uint64_t>((mm - s1 - s2 + s12) / 4)};
  }

  static TableSums from_counts(uint64_t m, const std::array<uint64_t, 4>& n) {
    auto d = [](uint64_t a, uint64_t b) {
      return static_cast<int64_t>(a) - static_cast<int64_t>(b);
    };
    TableSums s;
    s.m = m;
    s.s1 = d(n[0] + n[1], n[2] + n[3]);
    s.s2 = d(n[0] + n[2], n[1] + n[3]);
    s.s12 = d(n[0] + n[3], n[1] + n[2]);
    return s;
  }
};

struct Moments {
  Eigen::Matrix3d t;
  Eigen::Vector3d p1, p2;
};

Moments moments_from_sums(const std::array<std::array<TableSums, 3>, 3>& sums) {
  Moments mo;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      mo.t(i, j) = static_cast<double>(sums[i][j].s12) / static_cast<double>(sums[i][j].m);
  for (int a = 0; a < 3; ++a) {
    int64_t n1 = 0, v1 = 0, n2 = 0, v2 = 0;
    for (int k = 0; k < 3; ++k) {
      n1 += static_cast<int64_t>(sums[a][k].m);
      v1 += sums[a][k].s1;
      n2 += static_cast<int64_t>(sums[k][a].m);
      v2 += sums[k][a].s2;
    }
    mo.p1(a) = static_cast<double>(v1) / static_cast<double>(n1);
    mo.p2(a) = static_cast<double>(v2) / static_cast<double>(n2);
  }
  return mo;
}

double measure_from_moments(const Moments& mo) {
  return tensor_norm({mo.t - mo.p1 * mo.p2.transpose()});
}

}  // namespace

EstimationReport estimate(const DataMatrix& data, int boot_replicates,
                          std::optional<uint64_t> boot_seed) {
  std::array<std::array<TableSums, 3>, 3> sums;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const OutcomeTable& t = data.tables[i][j];
      if (t.rows() == 0)
        throw EmptyTable(std::string("no rows for axis pair (") +
                         axis_name(static_cast<Axis>(i)) + ", " +
                         axis_name(static_cast<Axis>(j)) + ")");
      auto k = kernels::pm1_sums(t.s1.data(), t.s2.data(), t.rows());
      sums[i][j] = {t.rows(), k.s1, k.s2, k.s12};
    }

  EstimationReport rep;
  Moments mo = moments_from_sums(sums);
  rep.t_hat = {mo.t};
  rep.p1_hat = {mo.p1};
  rep.p2_hat = {mo.p2};
  rep.e_hat = measure_from_moments(mo);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) rep.counts[i][j] = sums[i][j].m;
  rep.boot_seed = boot_seed.value_or(kDefaultBootSeed);
  rep.boot_replicates = boot_replicates;

  if (boot_replicates >= 2) {
    std::array<std::array<std::array<double, 4>, 3>, 3> freq;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        auto n = sums[i][j].counts();
        for (int c = 0; c < 4; ++c)
          freq[i][j][c] =
              static_cast<double>(n[c]) / static_cast<double>(sums[i][j].m);
      }

    SplitMix64 rng(rep.boot_seed);
    std::vector<double> reps(static_cast<size_t>(boot_replicates));
    std::array<std::array<TableSums, 3>, 3> rs;
    for (double& e_rep : reps) {
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          uint64_t m = sums[i][j].m;
          rs[i][j] = TableSums::from_counts(m, sample_multinomial4(m, freq[i][j], rng));
        }
      e_rep = measure_from_moments(moments_from_sums(rs));
    }

    double mean = 0.0;
    for (double v : reps) mean += v;
    mean /= static_cast<double>(reps.size());
    double var = 0.0;
    for (double v : reps) var += (v - mean) * (v - mean);
    var /= static_cast<double>(reps.size() - 1);
    rep.e_stderr = std::sqrt(var);
  }
  return rep;
}

EstimationReport run_experiment(const DensityMatrix4& rho, size_t m_per_pair, uint64_t seed,
                                int boot_replicates, std::optional<uint64_t> boot_seed) {
  DataMatrix data;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Axis ai = static_cast<Axis>(i), aj = static_cast<Axis>(j);
      data.tables[i][j] = sample_table(rho, ai, aj, m_per_pair, table_stream_seed(seed, ai, aj));
    }
  uint64_t bs = boot_seed.value_or(derive_stream_seed(seed, kBootstrapStreamId));
  return estimate(data, boot_replicates, bs);
}

}  // namespace spincorr
