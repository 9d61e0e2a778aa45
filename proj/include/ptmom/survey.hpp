#pragma once

#include <cstdint>
#include <vector>

#include "ptmom/hankel.hpp"
#include "ptmom/state.hpp"
#include "ptmom/states.hpp"
#include "ptmom/types.hpp"

namespace ptmom {

// All entanglement criteria for one state, from a single eigendecomposition
// of its partial transpose.  Optimal-bound violations above `max_order` are
// left unset; the chain rule (o_n defined only when o_{n-1} is zero) is
// applied inside.
CriterionReport evaluate_state(const BipartiteState& s, int max_order = 5,
                               const Tolerances& tol = default_tol());

// Which detection fractions a survey should accumulate.  Disabling the
// higher-order bound columns skips their (comparatively expensive) solves.
struct SurveyCriteria {
  bool npt = true;
  bool npt3 = true;
  bool onpt3 = true;
  bool onpt4 = true;
  bool npt5 = true;
  bool onpt5 = true;
};

struct SurveyFractions {
  double npt = 0, npt3 = 0, onpt3 = 0, onpt4 = 0, npt5 = 0, onpt5 = 0;
};

struct SurveyResult {
  int dim = 0;
  long samples = 0;
  uint64_t root_seed = 0;
  SurveyFractions fractions;
  SurveyFractions stderrs;  // binomial standard errors
};

// D x D Hilbert-Schmidt survey: counts, per criterion, the fraction of
// sampled states it detects.  onpt4/onpt5 are cumulative (a violation at any
// order up to n counts), matching how the detection fractions are tabulated.
// Deterministic for fixed (D, samples, root_seed); honors PTMOMENT_THREADS.
SurveyResult run_survey(int D, long samples, uint64_t root_seed,
                        const SurveyCriteria& criteria = SurveyCriteria{},
                        const Tolerances& tol = default_tol());

struct IsingSweepRow {
  double inverse_temperature = 0;
  double negativity = 0;
  double n3 = 0;
  double n5 = 0;
  double o3 = 0;  // violations; NaN when the order is undefined
  double o4 = 0;
  double o5 = 0;
};

std::vector<IsingSweepRow> ising_sweep(const IsingParams& params,
                                       const std::vector<double>& beta_grid,
                                       const Tolerances& tol = default_tol());

// Largest relative excess of the sharp third-moment lower bound over the
// square of the second moment, scanned on a uniform p_2 grid over (0, 1].
struct GapScan {
  double p2_star = 0;
  double max_relative_gap = 0;
};

GapScan gap_scan(int grid_points);

// Measurement budget for estimating p_n on an N-qubit state to relative
// accuracy epsilon with failure probability delta (order-of-magnitude
// estimate in the high-accuracy limit): ceil(n^2 2^N p2^{n-1} / (eps^2 delta)).
struct BudgetQuery {
  int n_qubits = 1;
  int moment_order = 3;
  double p2_estimate = 1.0;
  double epsilon = 0.1;
  double delta = 0.1;
};

long long sample_complexity(const BudgetQuery& q);

}  // namespace ptmom
