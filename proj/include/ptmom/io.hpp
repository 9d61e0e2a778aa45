#pragma once

#include <string>
#include <vector>

#include "ptmom/hankel.hpp"
#include "ptmom/moments.hpp"
#include "ptmom/state.hpp"
#include "ptmom/survey.hpp"
#include "ptmom/types.hpp"

namespace ptmom {

// Structurally invalid input (bad JSON, wrong shapes, missing fields).
// Distinct from ValidationError so callers can map it to a usage exit code.
struct ParseError : Error {
  using Error::Error;
};

// State files are JSON: {"format": 1, "dim_a": .., "dim_b": ..,
// "matrix": [[ [re, im], ... ], ...]} with the matrix row-major in the
// A-major composite index.  Doubles are serialized losslessly.
std::string state_to_json(const BipartiteState& s);
BipartiteState state_from_json(const std::string& text,
                               const Tolerances& tol = default_tol());

void write_state_file(const std::string& path, const BipartiteState& s);
BipartiteState read_state_file(const std::string& path,
                               const Tolerances& tol = default_tol());

// Criterion report with the moment vector and PT spectrum it came from.
std::string report_to_json(const CriterionReport& r, const MomentVector& p,
                           const Spectrum& pt_spectrum);

std::string survey_csv(const std::vector<SurveyResult>& results);
std::string ising_csv(const std::vector<IsingSweepRow>& rows);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace ptmom
