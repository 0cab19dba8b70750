#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace spincorr {

struct CheckResult {
  std::string name;
  int trials = 0;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool pass() const { return max_deviation <= tolerance; }
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> checks;
  std::vector<std::string> detail;  // extra lines the CLI prints verbatim
  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass()) return false;
    return true;
  }
};

// Random-state trials of unitary invariance: E drift and the covariance
// laws for T and the product tensor.
SuiteResult run_lu_suite(int trials, uint64_t seed);

// Q-matrix structure: orthogonality, det +1, composition order.
SuiteResult run_q_orth_suite(int trials, uint64_t seed);

// Measurement channels: E non-growth, output is a density matrix, and the
// contraction covariance of T.
SuiteResult run_povm_suite(int trials, uint64_t seed);

// D-matrix structure: contractivity, normality, transpose identity.
SuiteResult run_d_contract_suite(int trials, uint64_t seed);

// Eigenvalues of all 9 sigma-pair operators.
SuiteResult run_sigma_eig_suite();

}  // namespace spincorr
