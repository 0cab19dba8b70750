#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "spincorr/measurement.hpp"
#include "spincorr/scattering.hpp"
#include "spincorr/state.hpp"
#include "spincorr/tensor.hpp"

namespace spincorr {

// 17 significant digits: enough for a lossless double round trip.
std::string format_double(double v);

// Expects {"c_pp": [re, im], "c_pm": ..., "c_mp": ..., "c_mm": ...}.
// Throws std::invalid_argument on malformed input.
SpinCoefficients parse_state_json(const std::string& text);

// State plus its derived quantities; tensors flatten row-major.
std::string state_report_json(const TwoElectronState& s);

std::string estimation_report_json(const EstimationReport& rep);
EstimationReport parse_estimation_report_json(const std::string& text);

std::string table_filename(Axis i, Axis j);  // table_xy.csv

// Columns s1,s2; a leading `# seed=...` comment records the stream that
// produced the rows when known.
void write_outcome_table_csv(std::ostream& os, const OutcomeTable& t,
                             std::optional<uint64_t> seed = std::nullopt);
// Skips comments, requires the header, accepts only +-1 entries.
// Throws std::runtime_error on malformed content.
OutcomeTable read_outcome_table_csv(std::istream& is, Axis i, Axis j);

// One CSV per axis pair in `dir`, seeds derived from master_seed when given.
void write_data_matrix(const std::filesystem::path& dir, const DataMatrix& data,
                       std::optional<uint64_t> master_seed = std::nullopt);
DataMatrix read_data_matrix(const std::filesystem::path& dir);

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

}  // namespace spincorr
