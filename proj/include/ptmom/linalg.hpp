#pragma once

#include <Eigen/Dense>

#include "ptmom/state.hpp"
#include "ptmom/types.hpp"

namespace ptmom {

// Partial transpose on subsystem A as a pure index permutation:
// out[(a',b),(a,b')] = in[(a,b),(a',b')].  The result is Hermitian and
// trace-preserving but generally not PSD, so it is returned as a plain
// matrix rather than a BipartiteState.
Eigen::MatrixXcd partial_transpose(const Eigen::MatrixXcd& m, int dim_a, int dim_b);
Eigen::MatrixXcd partial_transpose(const BipartiteState& s);

// Eigenvalues of a Hermitian matrix, sorted descending.  Validates the
// Hermiticity deviation against tol.hermiticity.  Real symmetric inputs are
// detected and dispatched to the real solver (4x cheaper).
Spectrum eigenvalues_hermitian(const Eigen::MatrixXcd& m,
                               const Tolerances& tol = default_tol());

// Full decomposition variant (values descending, matching eigenvectors).
void eigh(const Eigen::MatrixXcd& m, Eigen::VectorXd& values, Eigen::MatrixXcd& vectors,
          const Tolerances& tol = default_tol());

// Sum of absolute eigenvalues (Schatten 1-norm of a Hermitian matrix).
double trace_norm(const Eigen::MatrixXcd& m, const Tolerances& tol = default_tol());

double min_eigenvalue(const Eigen::MatrixXcd& m, const Tolerances& tol = default_tol());

bool is_psd(const Eigen::MatrixXcd& m, double eps, const Tolerances& tol = default_tol());

}  // namespace ptmom
