#include "ptmom/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace ptmom {

Eigen::MatrixXcd partial_transpose(const Eigen::MatrixXcd& m, int dim_a, int dim_b) {
  if (dim_a < 1 || dim_b < 1)
    throw ValidationError("partial_transpose: dimensions must be positive");
  const long d = static_cast<long>(dim_a) * dim_b;
  if (m.rows() != d || m.cols() != d) {
    std::ostringstream os;
    os << "partial_transpose: matrix is " << m.rows() << "x" << m.cols()
       << " but dims (" << dim_a << "," << dim_b << ") require " << d << "x" << d;
    throw ValidationError(os.str());
  }
  Eigen::MatrixXcd out(d, d);
  for (int a = 0; a < dim_a; ++a)
    for (int ap = 0; ap < dim_a; ++ap)
      // swap the A indices block-wise: out block (ap,a) = in block (a,ap)
      out.block(static_cast<long>(ap) * dim_b, static_cast<long>(a) * dim_b, dim_b, dim_b) =
          m.block(static_cast<long>(a) * dim_b, static_cast<long>(ap) * dim_b, dim_b, dim_b);
  return out;
}

Eigen::MatrixXcd partial_transpose(const BipartiteState& s) {
  return partial_transpose(s.matrix(), s.dim_a(), s.dim_b());
}

namespace {

void require_hermitian(const Eigen::MatrixXcd& m, double herm_tol) {
  if (m.rows() != m.cols())
    throw ValidationError("matrix is not square");
  const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (dev > herm_tol) {
    std::ostringstream os;
    os << "matrix is not Hermitian: max deviation " << dev;
    throw ValidationError(os.str());
  }
}

bool is_real(const Eigen::MatrixXcd& m) {
  return m.imag().cwiseAbs().maxCoeff() == 0.0;
}

}  // namespace

Spectrum eigenvalues_hermitian(const Eigen::MatrixXcd& m, const Tolerances& tol) {
  require_hermitian(m, tol.hermiticity);
  Eigen::VectorXd ev;
  if (is_real(m)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.real(), Eigen::EigenvaluesOnly);
    ev = es.eigenvalues();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    ev = es.eigenvalues();
  }
  std::reverse(ev.begin(), ev.end());  // Eigen sorts ascending
  return Spectrum{std::move(ev)};
}

void eigh(const Eigen::MatrixXcd& m, Eigen::VectorXd& values, Eigen::MatrixXcd& vectors,
          const Tolerances& tol) {
  require_hermitian(m, tol.hermiticity);
  if (is_real(m)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.real());
    values = es.eigenvalues().reverse();
    vectors = es.eigenvectors().rowwise().reverse().cast<std::complex<double>>();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    values = es.eigenvalues().reverse();
    vectors = es.eigenvectors().rowwise().reverse();
  }
}

double trace_norm(const Eigen::MatrixXcd& m, const Tolerances& tol) {
  return eigenvalues_hermitian(m, tol).values.cwiseAbs().sum();
}

double min_eigenvalue(const Eigen::MatrixXcd& m, const Tolerances& tol) {
  return eigenvalues_hermitian(m, tol).min();
}

bool is_psd(const Eigen::MatrixXcd& m, double eps, const Tolerances& tol) {
  return min_eigenvalue(m, tol) >= -eps;
}

}  // namespace ptmom
