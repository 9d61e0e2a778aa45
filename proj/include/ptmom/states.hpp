#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "ptmom/state.hpp"
#include "ptmom/types.hpp"

namespace ptmom {

// Hilbert-Schmidt random state: rho = GG'/tr(GG') with G a square matrix of
// independent standard complex Gaussians.  (seed, index) addresses one state
// deterministically; surveys hand out consecutive indices under one seed.
BipartiteState sample_hs(int dim_a, int dim_b, uint64_t seed, uint64_t index = 0,
                         const Tolerances& tol = default_tol());

// Werner state (1 - V)/(d1(d1-1)) with V the swap; NPT for every d1 >= 2,
// and for d1 >= 3 the extreme PT eigenvalues sum to -(d1-2)/(d1(d1-1)) < 0.
BipartiteState werner(int d1, const Tolerances& tol = default_tol());

// |Phi+><Phi+| on two qubits.
BipartiteState bell_state(const Tolerances& tol = default_tol());

// Diagonal separable state sum_k w_k |a_k b_k><a_k b_k| from a nonnegative
// unit-sum weight list (padded with zeros up to dim_a*dim_b).  Its partial
// transpose is itself, so its PT-moments are the power sums of the weights.
BipartiteState product_state(const Eigen::VectorXd& weights, int dim_a, int dim_b,
                             const Tolerances& tol = default_tol());

// Transverse-field Ising chain -J(sum sz.sz + g sum sx) with periodic
// boundary, dense-diagonalized once; Gibbs states for any beta reuse the
// decomposition.  `cut` lists the sites forming side A.
struct IsingParams {
  int n_qubits = 2;
  double coupling = 1.0;           // J
  double field_ratio = 1.0;        // g
  double inverse_temperature = 0;  // beta
  std::vector<int> cut = {0};
};

class IsingSystem {
 public:
  explicit IsingSystem(const IsingParams& params);

  BipartiteState gibbs(double inverse_temperature,
                       const Tolerances& tol = default_tol()) const;
  const Eigen::VectorXd& energies() const { return energies_; }
  const IsingParams& params() const { return params_; }

 private:
  IsingParams params_;
  Eigen::VectorXd energies_;
  Eigen::MatrixXd modes_;
  std::vector<int> permutation_;  // basis reordering for the declared cut
};

BipartiteState ising_gibbs(const IsingParams& params,
                           const Tolerances& tol = default_tol());

// NPT state with p_3 >= p_2^2: a Werner block padded with diagonal product
// noise, N blocks of weights (2*lambda, lambda), N chosen as the smallest
// integer making the noisy third moment clear the square of the second.
struct CounterexampleParams {
  int base_dim = 3;
  std::optional<double> noise_weight;  // default: half the top PT eigenvalue
  std::optional<int> noise_blocks;     // default: smallest admissible N
};

struct Counterexample {
  BipartiteState state;
  int base_dim;
  int noise_blocks;
  double noise_weight;
  double trace_factor;  // trace of the unnormalized block matrix
};

Counterexample build_counterexample(const CounterexampleParams& params = {},
                                    const Tolerances& tol = default_tol());

}  // namespace ptmom
