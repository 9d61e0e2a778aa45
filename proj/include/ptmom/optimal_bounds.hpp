#pragma once

#include <optional>
#include <string>

#include <Eigen/Dense>

#include "ptmom/moments.hpp"
#include "ptmom/types.hpp"

namespace ptmom {

// Multiplicity data of the extremal spectra, when the solver resolved them.
struct Multiplicities {
  std::optional<int> alpha;  // order 3: repeated count in the minimizing spectrum
  std::optional<int> beta;   // order 4 maximizer block
  std::optional<int> gamma;  // order 4 minimizer block
  std::optional<int> kappa;  // order 5 maximizer block
  std::optional<int> eta;    // order 5 minimizer leading block
  std::optional<int> xi;     // order 5 minimizer inner block
};

// Sharp range of p_n over all d-dimensional spectra (nonnegative, unit sum)
// matching the lower moments, together with witness spectra attaining the
// ends.  Witnesses are descending and reproduce the input moments.
struct OptimalBounds {
  int order = 0;
  double p_min = 0.0;
  double p_max = 0.0;
  Eigen::VectorXd spectrum_min;
  Eigen::VectorXd spectrum_max;
  Multiplicities mult;
};

struct Feasibility {
  bool ok = true;
  int failed_order = 0;
  std::string reason;
};

// Existence of a d-dimensional separable-compatible spectrum with the given
// (p_1, p_2, p_3): p_1 = 1, 1/d <= p_2 <= 1 and p_3 inside the sharp bounds.
Feasibility feasibility_order3(const MomentVector& p, const Tolerances& tol = default_tol());

// Sharp bounds on p_3 given p_2 (the lower bound does not depend on d).
OptimalBounds p3_bounds(double p2, int d, const Tolerances& tol = default_tol());

// Sharp bounds on p_4 given (p_2, p_3) and on p_5 given (p_2, p_3, p_4).
// Throw InfeasibleError when the prefix is not attainable at dimension d.
OptimalBounds p4_bounds(const MomentVector& p, const Tolerances& tol = default_tol());
OptimalBounds p5_bounds(const MomentVector& p, const Tolerances& tol = default_tol());

// Distance of p_n outside its sharp range, the quantity that certifies
// entanglement when positive (for order 3 only the lower end can be violated
// by genuine state moments, so only that side is reported).  Defined only
// when the previous order's violation is (numerically) zero.
struct OpptViolation {
  int order = 0;
  bool defined = false;
  double value = 0.0;
};

OpptViolation oppt_violation(const MomentVector& p, int n,
                             const Tolerances& tol = default_tol());

// Independent reference optimizer: enumerates every multiplicity pattern of
// spectra with at most n-1 distinct nonzero values, solves the power-sum
// systems by damped least-squares iteration, and cross-validates with a
// random-restart projected local search on the constraint manifold.  Slower
// but structure-agnostic; used to certify the closed-form solvers.
struct OracleExtremum {
  double value = 0.0;
  Eigen::VectorXd spectrum;
};

OracleExtremum oracle_optimize(const MomentVector& p, int n, int d, bool maximize,
                               const Tolerances& tol = default_tol());

}  // namespace ptmom
