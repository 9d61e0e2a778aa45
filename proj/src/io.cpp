#include "ptmom/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ptmom {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string state_to_json(const BipartiteState& s) {
  json m = json::array();
  const int d = s.dim();
  for (int i = 0; i < d; ++i) {
    json row = json::array();
    for (int j = 0; j < d; ++j) {
      const std::complex<double> z = s.matrix()(i, j);
      row.push_back(json::array({z.real(), z.imag()}));
    }
    m.push_back(std::move(row));
  }
  json out{{"format", 1}, {"dim_a", s.dim_a()}, {"dim_b", s.dim_b()},
           {"matrix", std::move(m)}};
  return out.dump(2) + "\n";
}

BipartiteState state_from_json(const std::string& text, const Tolerances& tol) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("state file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("state file must be a JSON object");
  if (!j.contains("format") || !j["format"].is_number_integer() ||
      j["format"].get<int>() != 1)
    throw ParseError("state file must declare \"format\": 1");
  for (const char* key : {"dim_a", "dim_b", "matrix"})
    if (!j.contains(key))
      throw ParseError(std::string("state file missing field \"") + key + "\"");
  if (!j["dim_a"].is_number_integer() || !j["dim_b"].is_number_integer())
    throw ParseError("dim_a and dim_b must be integers");
  const int da = j["dim_a"].get<int>();
  const int db = j["dim_b"].get<int>();
  if (da < 1 || db < 1 || da > 4096 || db > 4096)
    throw ParseError("subsystem dimensions out of range");
  const long d = static_cast<long>(da) * db;

  const json& m = j["matrix"];
  if (!m.is_array() || static_cast<long>(m.size()) != d)
    throw ParseError("matrix must have dim_a*dim_b rows");
  Eigen::MatrixXcd mat(d, d);
  for (long i = 0; i < d; ++i) {
    const json& row = m[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<long>(row.size()) != d)
      throw ParseError("matrix rows must have dim_a*dim_b entries");
    for (long k = 0; k < d; ++k) {
      const json& e = row[static_cast<size_t>(k)];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw ParseError("matrix entries must be [re, im] pairs");
      mat(i, k) = std::complex<double>(e[0].get<double>(), e[1].get<double>());
    }
  }
  return BipartiteState::make(da, db, mat, tol);
}

void write_state_file(const std::string& path, const BipartiteState& s) {
  write_text_file(path, state_to_json(s));
}

BipartiteState read_state_file(const std::string& path, const Tolerances& tol) {
  return state_from_json(read_text_file(path), tol);
}

std::string report_to_json(const CriterionReport& r, const MomentVector& p,
                           const Spectrum& pt_spectrum) {
  json out;
  out["negativity"] = r.negativity;
  out["npt"] = r.npt;
  out["n3"] = r.n3 ? json(*r.n3) : json(nullptr);
  out["n5"] = r.n5 ? json(*r.n5) : json(nullptr);
  out["o3"] = r.o3 ? json(*r.o3) : json(nullptr);
  out["o4"] = r.o4 ? json(*r.o4) : json(nullptr);
  out["o5"] = r.o5 ? json(*r.o5) : json(nullptr);
  json elben = json::array();
  for (const auto& [n, ok] : r.elben)
    elben.push_back(json{{"order", n}, {"satisfied", ok}});
  out["moment_ratio_checks"] = std::move(elben);
  out["moments"] = json(p.values);
  json spec = json::array();
  for (long i = 0; i < pt_spectrum.values.size(); ++i)
    spec.push_back(pt_spectrum.values(i));
  out["pt_spectrum"] = std::move(spec);
  return out.dump(2) + "\n";
}

std::string survey_csv(const std::vector<SurveyResult>& results) {
  std::ostringstream os;
  os << "dim,samples,root_seed,npt,npt3,onpt3,onpt4,npt5,onpt5,"
        "se_npt,se_npt3,se_onpt3,se_onpt4,se_npt5,se_onpt5\n";
  for (const SurveyResult& r : results) {
    const SurveyFractions& f = r.fractions;
    const SurveyFractions& e = r.stderrs;
    os << r.dim << ',' << r.samples << ',' << r.root_seed;
    for (double v : {f.npt, f.npt3, f.onpt3, f.onpt4, f.npt5, f.onpt5, e.npt, e.npt3,
                     e.onpt3, e.onpt4, e.npt5, e.onpt5})
      os << ',' << fmt(v);
    os << '\n';
  }
  return os.str();
}

std::string ising_csv(const std::vector<IsingSweepRow>& rows) {
  std::ostringstream os;
  os << "inverse_temperature,negativity,n3,n5,o3,o4,o5\n";
  for (const IsingSweepRow& r : rows) {
    os << fmt(r.inverse_temperature) << ',' << fmt(r.negativity) << ',' << fmt(r.n3)
       << ',' << fmt(r.n5) << ',' << fmt(r.o3) << ',' << fmt(r.o4) << ','
       << fmt(r.o5) << '\n';
  }
  return os.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path);
  out << content;
  if (!out) throw Error("write failed: " + path);
}

}  // namespace ptmom
