#pragma once

#include <Eigen/Dense>

#include "ptmom/types.hpp"

namespace ptmom {

// Density matrix on H_A (x) H_B, stored dense with the A-major composite
// index: row/column index = b + dim_b * a.  Ingestion symmetrizes the matrix
// as (M + M^dag)/2 after checking the Hermiticity deviation, so downstream
// code may assume exact self-adjointness.
class BipartiteState {
 public:
  // Validating constructor: checks Hermiticity, unit trace and positive
  // semidefiniteness (within tol), then stores the symmetrized matrix.
  static BipartiteState make(int dim_a, int dim_b, const Eigen::MatrixXcd& m,
                             const Tolerances& tol = default_tol());

  // For generators whose output is valid by construction (still symmetrizes
  // and checks cheap invariants, but skips the eigenvalue test).
  static BipartiteState trusted(int dim_a, int dim_b, const Eigen::MatrixXcd& m);

  int dim_a() const { return dim_a_; }
  int dim_b() const { return dim_b_; }
  int dim() const { return dim_a_ * dim_b_; }
  const Eigen::MatrixXcd& matrix() const { return mat_; }

 private:
  BipartiteState(int da, int db, Eigen::MatrixXcd m)
      : dim_a_(da), dim_b_(db), mat_(std::move(m)) {}

  int dim_a_;
  int dim_b_;
  Eigen::MatrixXcd mat_;
};

}  // namespace ptmom
