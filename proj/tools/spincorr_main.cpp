// Command-line front end: sweeps, Bell-state references, measurement
// simulation, estimation over imported tables, and the verification suites.
//
// Exit codes: 0 success, 1 domain or suite failure, 2 usage error.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "spincorr/errors.hpp"
#include "spincorr/io.hpp"
#include "spincorr/local_ops.hpp"
#include "spincorr/measurement.hpp"
#include "spincorr/scattering.hpp"
#include "spincorr/state.hpp"
#include "spincorr/tensor.hpp"
#include "spincorr/verify.hpp"

namespace {

using namespace spincorr;

struct SweepFlags {
  double theta_min = 0.01;
  double theta_max = M_PI - 0.01;
  int theta_steps = 181;
  std::vector<double> omega{M_PI / 4};
  std::vector<double> phi{0.0};
  double v_rel = 1.5;
  std::string out;
};

struct MeasureFlags {
  std::string state_json;
  double theta = 0.0, omega = 0.0, phi = 0.0, v_rel = 1.5;
  uint64_t samples = 0;
  uint64_t seed = 0;
  std::string out;
  int boot_reps = kDefaultBootReplicates;
  std::optional<uint64_t> boot_seed;
};

struct EstimateFlags {
  std::string in;
  int boot_reps = kDefaultBootReplicates;
  std::optional<uint64_t> boot_seed;
};

struct VerifyFlags {
  std::string suite = "all";
  int trials = 0;  // 0 = per-suite default
  uint64_t seed = 7;
};

int usage_error(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return 2;
}

std::ostream* open_out(const std::string& path, std::ofstream& file) {
  if (path.empty()) return &std::cout;
  file.open(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file " + path);
  return &file;
}

int cmd_sweep(const SweepFlags& f) {
  if (!(f.theta_min > kThetaMin) || !(f.theta_max < M_PI - kThetaMin) ||
      f.theta_min > f.theta_max)
    return usage_error("theta range must lie inside the open interval (1e-06, pi - 1e-06)");
  if (f.theta_steps < 1) return usage_error("--theta-steps must be >= 1");
  if (!(f.v_rel > 0)) return usage_error("--v-rel must be positive");
  if (f.omega.empty() || f.phi.empty()) return usage_error("--omega/--phi need a value");

  SweepGrid grid{linspace(f.theta_min, f.theta_max, f.theta_steps), f.omega, f.phi, f.v_rel};
  std::ofstream file;
  std::ostream* os = open_out(f.out, file);
  write_sweep_csv(*os, sweep(grid));
  return 0;
}

TwoElectronState state_from_flags(const MeasureFlags& f) {
  if (!f.state_json.empty()) return normalize(parse_state_json(f.state_json));
  return scattering_state({f.theta, f.omega, f.phi, f.v_rel});
}

int cmd_measure_sim(const MeasureFlags& f) {
  DensityMatrix4 rho = density_matrix(state_from_flags(f));
  DataMatrix data;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Axis ai = static_cast<Axis>(i), aj = static_cast<Axis>(j);
      data.tables[i][j] =
          sample_table(rho, ai, aj, f.samples, table_stream_seed(f.seed, ai, aj));
    }
  uint64_t bs = f.boot_seed.value_or(derive_stream_seed(f.seed, kBootstrapStreamId));
  EstimationReport rep = estimate(data, f.boot_reps, bs);
  write_data_matrix(f.out, data, f.seed);
  std::cout << estimation_report_json(rep);
  return 0;
}

int cmd_estimate(const EstimateFlags& f) {
  DataMatrix data = read_data_matrix(f.in);
  EstimationReport rep = estimate(data, f.boot_reps, f.boot_seed);
  std::cout << estimation_report_json(rep);
  return 0;
}

int cmd_bell(const std::string& kind) {
  BellKind k;
  if (kind == "singlet") k = BellKind::Singlet;
  else if (kind == "triplet-a") k = BellKind::TripletA;
  else if (kind == "triplet-b") k = BellKind::TripletB;
  else if (kind == "triplet-c") k = BellKind::TripletC;
  else return usage_error("--kind must be singlet|triplet-a|triplet-b|triplet-c");
  std::cout << state_report_json(bell_state(k));
  return 0;
}

int cmd_state_info(const std::string& json) {
  std::cout << state_report_json(normalize(parse_state_json(json)));
  return 0;
}

int cmd_verify(const VerifyFlags& f) {
  std::vector<SuiteResult> results;
  auto want = [&](const char* name) { return f.suite == "all" || f.suite == name; };
  auto trials_or = [&](int dflt) { return f.trials > 0 ? f.trials : dflt; };

  if (want("lu")) results.push_back(run_lu_suite(trials_or(1000), f.seed));
  if (want("q-orth")) results.push_back(run_q_orth_suite(trials_or(1000), f.seed));
  if (want("povm")) results.push_back(run_povm_suite(trials_or(500), f.seed));
  if (want("d-contract")) results.push_back(run_d_contract_suite(trials_or(500), f.seed));
  if (want("sigma-eig")) results.push_back(run_sigma_eig_suite());
  if (results.empty())
    return usage_error("--suite must be lu|povm|q-orth|d-contract|sigma-eig|all");

  bool all_pass = true;
  std::printf("%-12s %-28s %8s %12s %10s %s\n", "suite", "check", "trials", "max_dev", "tol",
              "result");
  for (const auto& s : results) {
    for (const auto& line : s.detail) std::printf("  %s\n", line.c_str());
    for (const auto& c : s.checks) {
      std::printf("%-12s %-28s %8d %12.3e %10.0e %s\n", s.suite.c_str(), c.name.c_str(),
                  c.trials, c.max_deviation, c.tolerance, c.pass() ? "PASS" : "FAIL");
      all_pass = all_pass && c.pass();
    }
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spin correlation tensor and entanglement tools for two-electron states"};
  app.require_subcommand(1);

  SweepFlags sw;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Entanglement of the scattering state over a (theta, omega, phi) grid, as CSV");
  sweep_cmd->add_option("--theta-min", sw.theta_min, "Smallest scattering angle (radians)");
  sweep_cmd->add_option("--theta-max", sw.theta_max, "Largest scattering angle (radians)");
  sweep_cmd->add_option("--theta-steps", sw.theta_steps, "Number of theta grid points");
  sweep_cmd->add_option("--omega", sw.omega, "Opening angles, comma separated (radians)")
      ->delimiter(',');
  sweep_cmd->add_option("--phi", sw.phi, "Azimuths, comma separated (radians)")->delimiter(',');
  sweep_cmd->add_option("--v-rel", sw.v_rel, "Relative velocity (atomic units)");
  sweep_cmd->add_option("--out", sw.out, "Output CSV path (default stdout)");

  std::string bell_kind;
  CLI::App* bell_cmd =
      app.add_subcommand("bell", "Reference maximally entangled state with T, P1, P2, E");
  bell_cmd->add_option("--kind", bell_kind, "singlet|triplet-a|triplet-b|triplet-c")->required();

  std::string info_state;
  CLI::App* info_cmd =
      app.add_subcommand("state-info", "T, P1, P2 and E for a user-supplied state");
  info_cmd
      ->add_option("--state", info_state,
                   R"(State JSON, e.g. {"c_pp":[1,0],"c_pm":[0,0],"c_mp":[0,0],"c_mm":[0,0]})")
      ->required();

  MeasureFlags mf;
  uint64_t mf_boot_seed = 0;
  CLI::App* measure_cmd = app.add_subcommand(
      "measure-sim", "Sample +-1 outcome tables for all 9 axis pairs and estimate from them");
  CLI::Option* mf_state = measure_cmd->add_option("--state", mf.state_json, "State JSON");
  CLI::Option* mf_theta =
      measure_cmd->add_option("--theta", mf.theta, "Scattering angle (radians)");
  measure_cmd->add_option("--omega", mf.omega, "Spin opening angle (radians)");
  measure_cmd->add_option("--phi", mf.phi, "Spin azimuth (radians)");
  measure_cmd->add_option("--v-rel", mf.v_rel, "Relative velocity (atomic units)");
  measure_cmd->add_option("--samples", mf.samples, "Shots per axis pair")->required();
  measure_cmd->add_option("--seed", mf.seed, "Master seed for the 9 table streams")->required();
  measure_cmd->add_option("--out", mf.out, "Directory for table_<i><j>.csv files")->required();
  measure_cmd->add_option("--boot-reps", mf.boot_reps, "Bootstrap replicates");
  CLI::Option* mf_bs =
      measure_cmd->add_option("--boot-seed", mf_boot_seed,
                              "Bootstrap seed (default: derived from --seed)");
  mf_state->excludes(mf_theta);

  EstimateFlags ef;
  uint64_t ef_boot_seed = 0;
  CLI::App* estimate_cmd =
      app.add_subcommand("estimate", "Estimate T, P1, P2 and E from saved outcome tables");
  estimate_cmd->add_option("--in", ef.in, "Directory holding table_<i><j>.csv")->required();
  estimate_cmd->add_option("--boot-reps", ef.boot_reps, "Bootstrap replicates");
  CLI::Option* ef_bs = estimate_cmd->add_option("--boot-seed", ef_boot_seed, "Bootstrap seed");

  VerifyFlags vf;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "Numerical checks of the measure's structural properties");
  verify_cmd->add_option("--suite", vf.suite, "lu|povm|q-orth|d-contract|sigma-eig|all");
  verify_cmd->add_option("--trials", vf.trials, "Trials per suite (default per suite)");
  verify_cmd->add_option("--seed", vf.seed, "Seed for the random trials");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);  // prints the message or the requested help text
    return code == 0 ? 0 : 2;
  }

  try {
    if (*sweep_cmd) return cmd_sweep(sw);
    if (*bell_cmd) return cmd_bell(bell_kind);
    if (*info_cmd) return cmd_state_info(info_state);
    if (*measure_cmd) {
      if (mf.state_json.empty() && mf_theta->count() == 0)
        return usage_error("measure-sim needs --state or --theta/--omega scattering parameters");
      if (*mf_bs) mf.boot_seed = mf_boot_seed;
      if (mf.samples < 1) return usage_error("--samples must be >= 1");
      if (mf.boot_reps < 0) return usage_error("--boot-reps must be >= 0");
      return cmd_measure_sim(mf);
    }
    if (*estimate_cmd) {
      if (*ef_bs) ef.boot_seed = ef_boot_seed;
      if (ef.boot_reps < 0) return usage_error("--boot-reps must be >= 0");
      return cmd_estimate(ef);
    }
    if (*verify_cmd) return cmd_verify(vf);
  } catch (const NonHermitianInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const NotUnitary& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const InvalidKrausSet& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    return usage_error(e.what());  // malformed --state JSON and the like
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";  // NullState, domain, IO
    return 1;
  }
  return 2;
}
