#include "spincorr/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "spincorr/errors.hpp"

namespace spincorr {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

static std::string complex_json(const std::complex<double>& c) {
  return "[" + format_double(c.real()) + ", " + format_double(c.imag()) + "]";
}

static std::string matrix_json(const Eigen::Matrix3d& m) {
  std::string out = "[";
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      out += format_double(m(i, j));
      if (i != 2 || j != 2) out += ", ";
    }
  return out + "]";
}

static std::string vector_json(const Eigen::Vector3d& v) {
  return "[" + format_double(v(0)) + ", " + format_double(v(1)) + ", " + format_double(v(2)) +
         "]";
}

SpinCoefficients parse_state_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("state JSON parse: ") + e.what());
  }
  auto get = [&](const char* key) -> std::complex<double> {
    if (!j.contains(key)) throw std::invalid_argument(std::string("state JSON missing ") + key);
    const auto& v = j.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
      throw std::invalid_argument(std::string(key) + " must be a [re, im] number pair");
    return {v[0].get<double>(), v[1].get<double>()};
  };
  return {get("c_pp"), get("c_pm"), get("c_mp"), get("c_mm")};
}

std::string state_report_json(const TwoElectronState& s) {
  CorrelationTensor t = correlation_tensor_closed(s);
  Polarization p1 = polarization(s, Particle::First);
  Polarization p2 = polarization(s, Particle::Second);
  double e = entanglement_measure(s);

  std::string out = "{\n";
  out += "  \"state\": {\n";
  out += "    \"c_pp\": " + complex_json(s.c.c_pp) + ",\n";
  out += "    \"c_pm\": " + complex_json(s.c.c_pm) + ",\n";
  out += "    \"c_mp\": " + complex_json(s.c.c_mp) + ",\n";
  out += "    \"c_mm\": " + complex_json(s.c.c_mm) + "\n";
  out += "  },\n";
  out += "  \"T\": " + matrix_json(t.t) + ",\n";
  out += "  \"P1\": " + vector_json(p1.p) + ",\n";
  out += "  \"P2\": " + vector_json(p2.p) + ",\n";
  out += "  \"E\": " + format_double(e) + "\n";
  out += "}\n";
  return out;
}

std::string estimation_report_json(const EstimationReport& rep) {
  std::string counts = "[";
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      counts += std::to_string(rep.counts[i][j]);
      if (i != 2 || j != 2) counts += ", ";
    }
  counts += "]";

  std::string out = "{\n";
  out += "  \"t_hat\": " + matrix_json(rep.t_hat.t) + ",\n";
  out += "  \"p1_hat\": " + vector_json(rep.p1_hat.p) + ",\n";
  out += "  \"p2_hat\": " + vector_json(rep.p2_hat.p) + ",\n";
  out += "  \"e_hat\": " + format_double(rep.e_hat) + ",\n";
  out += "  \"e_stderr\": " + format_double(rep.e_stderr) + ",\n";
  out += "  \"counts\": " + counts + ",\n";
  out += "  \"boot_replicates\": " + std::to_string(rep.boot_replicates) + ",\n";
  out += "  \"boot_seed\": " + std::to_string(rep.boot_seed) + "\n";
  out += "}\n";
  return out;
}

EstimationReport parse_estimation_report_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  EstimationReport rep;
  for (int i = 0; i < 3; ++i)
    for (int j2 = 0; j2 < 3; ++j2) {
      rep.t_hat.t(i, j2) = j.at("t_hat").at(3 * i + j2).get<double>();
      rep.counts[i][j2] = j.at("counts").at(3 * i + j2).get<uint64_t>();
    }
  for (int i = 0; i < 3; ++i) {
    rep.p1_hat.p(i) = j.at("p1_hat").at(i).get<double>();
    rep.p2_hat.p(i) = j.at("p2_hat").at(i).get<double>();
  }
  rep.e_hat = j.at("e_hat").get<double>();
  rep.e_stderr = j.at("e_stderr").get<double>();
  rep.boot_replicates = j.at("boot_replicates").get<int>();
  rep.boot_seed = j.at("boot_seed").get<uint64_t>();
  return rep;
}

std::string table_filename(Axis i, Axis j) {
  return std::string("table_") + axis_name(i) + axis_name(j) + ".csv";
}

void write_outcome_table_csv(std::ostream& os, const OutcomeTable& t,
                             std::optional<uint64_t> seed) {
  if (seed) os << "# seed=" << *seed << "\n";
  os << "s1,s2\n";
  for (size_t k = 0; k < t.rows(); ++k)
    os << static_cast<int>(t.s1[k]) << "," << static_cast<int>(t.s2[k]) << "\n";
}

OutcomeTable read_outcome_table_csv(std::istream& is, Axis i, Axis j) {
  OutcomeTable t;
  t.axis1 = i;
  t.axis2 = j;
  std::string line;
  bool saw_header = false;
  size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!saw_header) {
      if (line != "s1,s2")
        throw std::runtime_error("expected header s1,s2 at line " + std::to_string(lineno));
      saw_header = true;
      continue;
    }
    size_t comma = line.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error("missing comma at line " + std::to_string(lineno));
    auto parse_pm1 = [&](const std::string& tok) -> int8_t {
      if (tok == "1" || tok == "+1") return 1;
      if (tok == "-1") return -1;
      throw std::runtime_error("entry '" + tok + "' at line " + std::to_string(lineno) +
                               " is not +-1");
    };
    t.s1.push_back(parse_pm1(line.substr(0, comma)));
    t.s2.push_back(parse_pm1(line.substr(comma + 1)));
  }
  if (!saw_header) throw std::runtime_error("empty table file: no s1,s2 header");
  return t;
}

void write_data_matrix(const std::filesystem::path& dir, const DataMatrix& data,
                       std::optional<uint64_t> master_seed) {
  std::filesystem::create_directories(dir);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Axis ai = static_cast<Axis>(i), aj = static_cast<Axis>(j);
      std::ofstream f(dir / table_filename(ai, aj), std::ios::binary);
      if (!f) throw std::runtime_error("cannot open " + (dir / table_filename(ai, aj)).string());
      std::optional<uint64_t> seed;
      if (master_seed) seed = table_stream_seed(*master_seed, ai, aj);
      write_outcome_table_csv(f, data.tables[i][j], seed);
    }
}

DataMatrix read_data_matrix(const std::filesystem::path& dir) {
  DataMatrix data;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Axis ai = static_cast<Axis>(i), aj = static_cast<Axis>(j);
      std::ifstream f(dir / table_filename(ai, aj), std::ios::binary);
      if (!f) throw std::runtime_error("cannot open " + (dir / table_filename(ai, aj)).string());
      data.tables[i][j] = read_outcome_table_csv(f, ai, aj);
    }
  return data;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "theta,omega,phi,v_rel,E,degenerate\n";
  for (const auto& r : rows)
    os << format_double(r.theta) << "," << format_double(r.omega) << "," << format_double(r.phi)
       << "," << format_double(r.v_rel) << "," << format_double(r.entanglement) << ","
       << (r.degenerate ? 1 : 0) << "\n";
}

}  // namespace spincorr
