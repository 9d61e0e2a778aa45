#include "ptmom/state.hpp"

#include <sstream>

#include "ptmom/linalg.hpp"

namespace ptmom {

namespace {

void check_shape(int dim_a, int dim_b, const Eigen::MatrixXcd& m) {
  if (dim_a < 1 || dim_b < 1)
    throw ValidationError("state dimensions must be positive");
  const int d = dim_a * dim_b;
  if (m.rows() != d || m.cols() != d) {
    std::ostringstream os;
    os << "state matrix is " << m.rows() << "x" << m.cols() << ", expected " << d
       << "x" << d << " for dims (" << dim_a << "," << dim_b << ")";
    throw ValidationError(os.str());
  }
}

Eigen::MatrixXcd symmetrize(const Eigen::MatrixXcd& m, double herm_tol) {
  const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (dev > herm_tol) {
    std::ostringstream os;
    os << "matrix is not Hermitian: max deviation " << dev << " exceeds " << herm_tol;
    throw ValidationError(os.str());
  }
  return 0.5 * (m + m.adjoint().eval());
}

void check_trace(const Eigen::MatrixXcd& m, double trace_tol) {
  const double tr = m.trace().real();
  if (std::abs(tr - 1.0) > trace_tol) {
    std::ostringstream os;
    os << "trace is " << tr << ", expected 1 within " << trace_tol;
    throw ValidationError(os.str());
  }
}

}  // namespace

BipartiteState BipartiteState::make(int dim_a, int dim_b, const Eigen::MatrixXcd& m,
                                    const Tolerances& tol) {
  check_shape(dim_a, dim_b, m);
  Eigen::MatrixXcd h = symmetrize(m, tol.hermiticity);
  check_trace(h, tol.trace);
  const double lo = min_eigenvalue(h, tol);
  if (lo < -tol.state_psd) {
    std::ostringstream os;
    os << "matrix is not positive semidefinite: min eigenvalue " << lo;
    throw ValidationError(os.str());
  }
  return BipartiteState(dim_a, dim_b, std::move(h));
}

BipartiteState BipartiteState::trusted(int dim_a, int dim_b, const Eigen::MatrixXcd& m) {
  check_shape(dim_a, dim_b, m);
  Eigen::MatrixXcd h = symmetrize(m, default_tol().hermiticity);
  check_trace(h, default_tol().trace);
  return BipartiteState(dim_a, dim_b, std::move(h));
}

}  // namespace ptmom
