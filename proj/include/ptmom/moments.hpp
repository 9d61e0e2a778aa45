#pragma once

#include <vector>

#include "ptmom/linalg.hpp"
#include "ptmom/state.hpp"
#include "ptmom/types.hpp"

namespace ptmom {

// Moments p_k = tr[(rho^{T_A})^k] for k = 0..n.  By convention p_0 is the
// total dimension and p_1 = 1 for a normalized state.
struct MomentVector {
  std::vector<double> values;  // values[k] = p_k

  int order() const { return static_cast<int>(values.size()) - 1; }
  double operator[](int k) const { return values[static_cast<size_t>(k)]; }
  double dimension() const { return values[0]; }
};

// Computes p_0..p_n from one eigendecomposition of the partial transpose.
MomentVector pt_moments(const BipartiteState& s, int n,
                        const Tolerances& tol = default_tol());

// Power sums of an eigenvalue list: p_k = sum_i lambda_i^k, p_0 = count.
MomentVector moments_of_spectrum(const Spectrum& spec, int n);
MomentVector moments_of_spectrum(const std::vector<double>& values, int n);

// tr(rho^2); cross-checked against the partial-transpose route, since the
// second moment is invariant under partial transposition.
double purity(const BipartiteState& s, const Tolerances& tol = default_tol());

}  // namespace ptmom
