#pragma once

#include <optional>

#include <Eigen/Dense>

#include "ptmom/moments.hpp"
#include "ptmom/types.hpp"

namespace ptmom {

// m lies in the closure of the set of moment vectors tr(sigma X^k) of a
// state sigma and Hermitian X iff H_{floor(n/2)} is PSD; requiring a PSD X
// additionally needs B_{floor((n-1)/2)} PSD.  Both checks use
// tol.criterion_psd as the PSD slack.
bool membership_Mn(const MomentVector& m, const Tolerances& tol = default_tol());
bool membership_Mn_plus(const MomentVector& m, const Tolerances& tol = default_tol());

// One-step flat extension: appends m_{2l+2} = mu^T H_l^{-1} mu with
// mu = (m_{l+1}, ..., m_{2l+1}), which zeroes the Schur complement so that
// rank(H_{l+1}) = rank(H_l).  For even n the intermediate odd moment
// m_{2l+1} may be supplied; when absent it defaults to the depth-l recurrence
// continuation mu~^T H_{l-1}^{-1} mu_{l-1} (the unique choice that keeps the
// l-atom representing measure of the leading block).  Requires H_l positive
// definite (min eigenvalue > 1e-10).
MomentVector flat_extension(const MomentVector& m,
                            std::optional<double> odd_moment = std::nullopt,
                            const Tolerances& tol = default_tol());

// Finite realization m_k = <phi| X^k |phi> recovered from the Hankel data.
struct MomentRealization {
  Eigen::VectorXd vector;      // phi, with |phi|^2 = m_0
  Eigen::MatrixXd observable;  // real symmetric X
};

// Reconstructs (phi, X) reproducing m_0..m_n within tol.moment_match.  The
// number of atoms equals the largest r with H_{r-1} positive definite; if the
// remaining moments are not generated by that finite measure the sequence is
// only realizable in the closure and a SingularHankelError is thrown.  With
// require_psd_observable the construction picks the B-flat odd moment for
// even n and verifies X >= 0, throwing (with the witness direction in the
// message) when no PSD realization exists.
MomentRealization realize_moments(const MomentVector& m, bool require_psd_observable,
                                  const Tolerances& tol = default_tol());

}  // namespace ptmom
