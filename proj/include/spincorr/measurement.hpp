#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "spincorr/pauli.hpp"
#include "spincorr/rng.hpp"
#include "spincorr/tensor.hpp"

namespace spincorr {

// One analyzer setting's record: per shot the two +-1 projections.
struct OutcomeTable {
  Axis axis1 = Axis::X;
  Axis axis2 = Axis::X;
  std::vector<int8_t> s1;
  std::vector<int8_t> s2;
  size_t rows() const { return s1.size(); }
};

// The 3x3 grid of tables, one per axis pair, indexed [i][j].
struct DataMatrix {
  std::array<std::array<OutcomeTable, 3>, 3> tables;
  OutcomeTable& at(Axis i, Axis j) { return tables[static_cast<int>(i)][static_cast<int>(j)]; }
  const OutcomeTable& at(Axis i, Axis j) const {
    return tables[static_cast<int>(i)][static_cast<int>(j)];
  }
};

struct PooledColumn {
  Particle particle;
  Axis axis;
  std::vector<int8_t> values;
  size_t count() const { return values.size(); }
};

struct EstimationReport {
  CorrelationTensor t_hat;
  Polarization p1_hat, p2_hat;
  double e_hat = 0.0;
  double e_stderr = 0.0;
  std::array<std::array<uint64_t, 3>, 3> counts{};
  uint64_t boot_seed = 0;
  int boot_replicates = 0;
};

// Joint Born probabilities in the order (+,+), (+,-), (-,+), (-,-) for
// projective measurement along axes (i, j). Throws NonHermitianInput if a
// trace has imaginary residue above 1e-10 or a probability is below -1e-12.
std::array<double, 4> outcome_distribution(const DensityMatrix4& rho, Axis i, Axis j);

// m i.i.d. draws; `seed` names the table's outcome stream directly, so equal
// seeds give identical tables on any platform.
OutcomeTable sample_table(const DensityMatrix4& rho, Axis i, Axis j, size_t m, uint64_t seed);

// Particle-1 column for axis i concatenates table row (i, x..z); particle-2
// column for axis j concatenates column (x..z, j).
std::array<PooledColumn, 6> pool_columns(const DataMatrix& data);

// Substream ids of a master seed: 0..8 for tables (3i + j), 9 for bootstrap.
inline constexpr uint64_t kBootstrapStreamId = 9;
inline uint64_t table_stream_seed(uint64_t master, Axis i, Axis j) {
  return derive_stream_seed(master, 3 * static_cast<uint64_t>(i) + static_cast<uint64_t>(j));
}

inline constexpr int kDefaultBootReplicates = 200;
// Used when estimating imported data with no seed given anywhere.
inline constexpr uint64_t kDefaultBootSeed = 0x626f6f74;

// Plain-average estimators over the tables plus a bootstrap standard error
// for e_hat. Throws EmptyTable if any table has no rows.
//
// The bootstrap resamples rows within each table independently. Every
// statistic here depends on a table only through its four outcome counts,
// so resampling m rows with replacement is realized as one
// Multinomial(m, counts/m) draw per table per replicate; the distribution
// of the replicate statistics is identical to literal row resampling.
EstimationReport estimate(const DataMatrix& data, int boot_replicates = kDefaultBootReplicates,
                          std::optional<uint64_t> boot_seed = std::nullopt);

// Samples all 9 tables (m shots each, substreams of `seed`) and estimates.
// boot_seed defaults to substream 9 of `seed`.
EstimationReport run_experiment(const DensityMatrix4& rho, size_t m_per_pair, uint64_t seed,
                                int boot_replicates = kDefaultBootReplicates,
                                std::optional<uint64_t> boot_seed = std::nullopt);

}  // namespace spincorr
