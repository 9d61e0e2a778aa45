#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <complex>

#include "ptmom/linalg.hpp"
#include "ptmom/state.hpp"
#include "ptmom/states.hpp"

using namespace ptmom;
using Eigen::MatrixXcd;
using Eigen::VectorXd;

namespace {

MatrixXcd bell_matrix() {
  MatrixXcd m = MatrixXcd::Zero(4, 4);
  m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
  return m;
}

}  // namespace

TEST_CASE("partial transpose is an involution and preserves the trace") {
  const BipartiteState s = sample_hs(2, 3, 11);
  const MatrixXcd pt = partial_transpose(s);
  CHECK(std::abs(pt.trace().real() - 1.0) < 1e-13);
  CHECK(std::abs(pt.trace().imag()) < 1e-13);
  CHECK((pt - pt.adjoint()).cwiseAbs().maxCoeff() < 1e-13);
  const MatrixXcd back = partial_transpose(pt, 2, 3);
  CHECK((back - s.matrix()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("partial transpose of the Bell projector swaps the off-diagonal block") {
  const MatrixXcd pt = partial_transpose(bell_matrix(), 2, 2);
  // |00><11| moves to |01><10|
  CHECK(pt(0, 0).real() == doctest::Approx(0.5));
  CHECK(pt(1, 2).real() == doctest::Approx(0.5));
  CHECK(std::abs(pt(0, 3)) == doctest::Approx(0.0));
  const Spectrum spec = eigenvalues_hermitian(pt);
  CHECK(spec.values(0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(spec.values(2) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(spec.values(3) == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("eigenvalues are sorted descending and reject non-Hermitian input") {
  MatrixXcd m = MatrixXcd::Zero(3, 3);
  m(0, 0) = 1.0;
  m(1, 1) = -2.0;
  m(2, 2) = 0.5;
  const Spectrum s = eigenvalues_hermitian(m);
  CHECK(s.values(0) == 1.0);
  CHECK(s.values(1) == 0.5);
  CHECK(s.values(2) == -2.0);
  CHECK(s.max() == 1.0);
  CHECK(s.min() == -2.0);

  m(0, 1) = std::complex<double>(0.0, 1e-3);  // no conjugate partner
  CHECK_THROWS_AS(eigenvalues_hermitian(m), ValidationError);
}

TEST_CASE("real-symmetric input agrees with the complex path") {
  MatrixXcd m(3, 3);
  m << 2.0, 1.0, 0.0, 1.0, 3.0, 0.5, 0.0, 0.5, 1.0;
  const Spectrum real_path = eigenvalues_hermitian(m);
  MatrixXcd mc = m;
  mc(0, 1) += std::complex<double>(0.0, 1e-30);  // force the complex branch
  mc(1, 0) -= std::complex<double>(0.0, 1e-30);
  const Spectrum complex_path = eigenvalues_hermitian(mc);
  for (int i = 0; i < 3; ++i)
    CHECK(real_path.values(i) == doctest::Approx(complex_path.values(i)).epsilon(1e-13));
}

TEST_CASE("eigh reconstructs the matrix") {
  const BipartiteState s = sample_hs(2, 2, 5);
  VectorXd vals;
  MatrixXcd vecs;
  eigh(s.matrix(), vals, vecs);
  CHECK(vals(0) >= vals(3));
  const MatrixXcd rebuilt = vecs * vals.asDiagonal() * vecs.adjoint();
  CHECK((rebuilt - s.matrix()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("trace norm of the Bell partial transpose gives negativity 1/2") {
  const MatrixXcd pt = partial_transpose(bell_matrix(), 2, 2);
  const double tn = trace_norm(pt);
  CHECK(tn == doctest::Approx(2.0).epsilon(1e-12));
  CHECK((tn - 1.0) / 2.0 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(min_eigenvalue(pt) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK_FALSE(is_psd(pt, 1e-9));
  CHECK(is_psd(MatrixXcd::Identity(3, 3), 0.0));
}

TEST_CASE("state ingestion validates Hermiticity, trace and positivity") {
  MatrixXcd m = MatrixXcd::Zero(4, 4);
  m(0, 0) = 1.2;
  m(1, 1) = -0.2;
  CHECK_THROWS_AS(BipartiteState::make(2, 2, m, default_tol()), ValidationError);

  m(1, 1) = 0.2;  // trace 1.4
  CHECK_THROWS_AS(BipartiteState::make(2, 2, m, default_tol()), ValidationError);

  MatrixXcd h = bell_matrix();
  h(0, 3) += std::complex<double>(0.0, 1e-3);
  CHECK_THROWS_AS(BipartiteState::make(2, 2, h, default_tol()), ValidationError);

  CHECK_THROWS_AS(BipartiteState::make(2, 3, bell_matrix(), default_tol()),
                  ValidationError);  // dimension mismatch

  const BipartiteState ok = BipartiteState::make(2, 2, bell_matrix(), default_tol());
  CHECK(ok.dim_a() == 2);
  CHECK(ok.dim_b() == 2);
  CHECK(ok.dim() == 4);
  CHECK((ok.matrix() - ok.matrix().adjoint()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("trusted ingestion symmetrizes exactly") {
  MatrixXcd m = bell_matrix();
  m(0, 3) += std::complex<double>(0.0, 1e-12);  // below the Hermiticity gate
  const BipartiteState s = BipartiteState::trusted(2, 2, m);
  CHECK((s.matrix() - s.matrix().adjoint()).cwiseAbs().maxCoeff() == 0.0);
}
