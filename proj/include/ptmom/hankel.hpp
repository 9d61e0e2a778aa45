#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ptmom/moments.hpp"
#include "ptmom/types.hpp"

namespace ptmom {

// Hankel matrices of a moment vector m of order n:
//   H[i][j] = m_{i+j},   size (floor(n/2)+1)^2
//   B[i][j] = m_{i+j+1}, size (floor((n-1)/2)+1)^2
// H is PSD for the moments of any Hermitian matrix with the given trace data;
// B is additionally PSD when a PSD representing matrix exists.
struct HankelPair {
  Eigen::MatrixXd H;
  Eigen::MatrixXd B;
  int h_order;  // H is (h_order+1) x (h_order+1)
  int b_order;  // B is (b_order+1) x (b_order+1)
};

HankelPair build_hankel(const MomentVector& m);

// Moment criterion at odd order n: a state with a PSD partial transpose has
// B_{(n-1)/2}(p) PSD, so a negative eigenvalue certifies entanglement.
// For even n the B matrix repeats the previous odd order, so the check is
// reported at the largest odd order <= n.  Returns true when the moments are
// consistent with a PSD partial transpose (B PSD within tol.criterion_psd).
bool pn_ppt_check(const MomentVector& p, int n, const Tolerances& tol = default_tol());

// Violation magnitude N_n = (||B||_1 - tr B)/2, i.e. the absolute sum of the
// negative eigenvalues of the B matrix at odd order n.  Zero iff B is PSD.
double hankel_negativity(const MomentVector& p, int n,
                         const Tolerances& tol = default_tol());

// Moment-ratio inequalities p_n^{n-2} >= p_{n-1}^{n-1} for n = 3..order.
// They follow from the PSD Hankel structure by induction, so any violation
// certifies entanglement.  Signed powers are evaluated exactly.
std::vector<std::pair<int, bool>> elben_higher_check(const MomentVector& p);

// Aggregated criterion evaluation for one state (filled by the survey layer).
struct CriterionReport {
  double negativity = 0.0;             // (||rho^{T_A}||_1 - 1)/2
  bool npt = false;                    // negativity above detection threshold
  std::optional<double> n3;            // Hankel negativity at order 3
  std::optional<double> n5;            // Hankel negativity at order 5
  std::optional<double> o3;            // optimal-bound violations; absent when
  std::optional<double> o4;            // undefined (previous order violated)
  std::optional<double> o5;
  std::vector<std::pair<int, bool>> elben;
};

}  // namespace ptmom
