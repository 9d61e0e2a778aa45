#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <string>

#include "json.hpp"
#include "ptmom/io.hpp"
#include "ptmom/linalg.hpp"
#include "ptmom/moments.hpp"
#include "ptmom/states.hpp"
#include "ptmom/survey.hpp"

using namespace ptmom;

TEST_CASE("state serialization roundtrips bit-exactly") {
  for (const BipartiteState& s : {bell_state(), sample_hs(2, 3, 2024, 17)}) {
    const std::string text = state_to_json(s);
    const BipartiteState back = state_from_json(text);
    CHECK(back.dim_a() == s.dim_a());
    CHECK(back.dim_b() == s.dim_b());
    CHECK((back.matrix() - s.matrix()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("malformed input is a parse error, invalid physics a validation error") {
  CHECK_THROWS_AS(state_from_json("not json at all"), ParseError);
  CHECK_THROWS_AS(state_from_json("[1,2,3]"), ParseError);
  CHECK_THROWS_AS(state_from_json(R"({"format":2,"dim_a":2,"dim_b":2,"matrix":[]})"),
                  ParseError);
  CHECK_THROWS_AS(state_from_json(R"({"format":1,"dim_a":2,"matrix":[]})"), ParseError);
  CHECK_THROWS_AS(
      state_from_json(R"({"format":1,"dim_a":1.5,"dim_b":2,"matrix":[]})"),
      ParseError);
  // right shape, wrong row count
  CHECK_THROWS_AS(
      state_from_json(
          R"({"format":1,"dim_a":2,"dim_b":1,"matrix":[[[1.0,0.0],[0.0,0.0]]]})"),
      ParseError);
  // an entry that is not an [re, im] pair
  CHECK_THROWS_AS(
      state_from_json(
          R"({"format":1,"dim_a":1,"dim_b":2,"matrix":[[[0.5],[0.0,0.0]],[[0.0,0.0],[0.5,0.0]]]})"),
      ParseError);
  // parses fine but is not Hermitian
  CHECK_THROWS_AS(
      state_from_json(
          R"({"format":1,"dim_a":1,"dim_b":2,"matrix":[[[0.5,0.0],[0.3,0.0]],[[0.0,0.0],[0.5,0.0]]]})"),
      ValidationError);
}

TEST_CASE("state files roundtrip through disk") {
  const std::string path = "io_test_state.json";
  const BipartiteState s = sample_hs(3, 2, 5150);
  write_state_file(path, s);
  const BipartiteState back = read_state_file(path);
  CHECK((back.matrix() - s.matrix()).cwiseAbs().maxCoeff() == 0.0);
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_state_file("definitely_missing_file.json"), ParseError);
}

TEST_CASE("analysis reports serialize every field") {
  const BipartiteState s = bell_state();
  const CriterionReport r = evaluate_state(s);
  const MomentVector p = pt_moments(s, 5);
  const Spectrum spec = eigenvalues_hermitian(partial_transpose(s));
  const std::string text = report_to_json(r, p, spec);

  const nlohmann::json j = nlohmann::json::parse(text);
  CHECK(j["negativity"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(j["npt"].get<bool>());
  CHECK(j["o3"].get<double>() == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(j["o4"].is_null());
  CHECK(j["n3"].get<double>() == doctest::Approx(0.44300046816469137).epsilon(1e-10));
  REQUIRE(j["moments"].size() == 6);
  CHECK(j["moments"][0].get<double>() == 4.0);
  CHECK(j["moments"][3].get<double>() == doctest::Approx(0.25).epsilon(1e-12));
  REQUIRE(j["pt_spectrum"].size() == 4);
  CHECK(j["pt_spectrum"][3].get<double>() == doctest::Approx(-0.5).epsilon(1e-12));
  REQUIRE(j["moment_ratio_checks"].size() >= 1);
  CHECK(j["moment_ratio_checks"][0]["order"].get<int>() == 3);
  CHECK_FALSE(j["moment_ratio_checks"][0]["satisfied"].get<bool>());
}

TEST_CASE("survey and sweep tables have stable headers") {
  const SurveyResult r = run_survey(2, 50, 1);
  const std::string csv = survey_csv({r});
  CHECK(csv.rfind("dim,samples,root_seed,npt,npt3,onpt3,onpt4,npt5,onpt5,"
                  "se_npt,se_npt3,se_onpt3,se_onpt4,se_npt5,se_onpt5\n",
                  0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
  CHECK(csv.find("\n2,50,1,") != std::string::npos);

  IsingParams p;
  p.n_qubits = 2;
  const std::string ic = ising_csv(ising_sweep(p, {0.0, 1.0}));
  CHECK(ic.rfind("inverse_temperature,negativity,n3,n5,o3,o4,o5\n", 0) == 0);
  CHECK(std::count(ic.begin(), ic.end(), '\n') == 3);
}

TEST_CASE("text files roundtrip") {
  const std::string path = "io_test_text.txt";
  write_text_file(path, "alpha\nbeta\n");
  CHECK(read_text_file(path) == "alpha\nbeta\n");
  std::remove(path.c_str());
}
