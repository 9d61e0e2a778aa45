#include "ptmom/moment_problem.hpp"

#include <cmath>
#include <sstream>

#include "ptmom/hankel.hpp"
#include "ptmom/linalg.hpp"

namespace ptmom {

namespace {

Eigen::MatrixXd leading_hankel(const MomentVector& m, int size) {
  Eigen::MatrixXd h(size, size);
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) h(i, j) = m[i + j];
  return h;
}

double min_eig_sym(const Eigen::MatrixXd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

// Largest r such that the leading r x r Hankel block is positive definite.
int pd_rank(const MomentVector& m, int max_size) {
  int r = 0;
  for (int k = 1; k <= max_size; ++k) {
    if (2 * (k - 1) > m.order()) break;
    if (min_eig_sym(leading_hankel(m, k)) > 1e-10)
      r = k;
    else
      break;
  }
  return r;
}

}  // namespace

bool membership_Mn(const MomentVector& m, const Tolerances& tol) {
  const HankelPair hp = build_hankel(m);
  return min_eig_sym(hp.H) >= -tol.criterion_psd;
}

bool membership_Mn_plus(const MomentVector& m, const Tolerances& tol) {
  const HankelPair hp = build_hankel(m);
  return min_eig_sym(hp.H) >= -tol.criterion_psd &&
         min_eig_sym(hp.B) >= -tol.criterion_psd;
}

MomentVector flat_extension(const MomentVector& m, std::optional<double> odd_moment,
                            const Tolerances& tol) {
  const int n = m.order();
  if (n < 1) throw ValidationError("flat_extension: order must be >= 1");
  const int l = n / 2;

  const Eigen::MatrixXd Hl = leading_hankel(m, l + 1);
  if (min_eig_sym(Hl) <= 1e-10)
    throw SingularHankelError("flat_extension: H is singular (min eigenvalue <= 1e-10)");

  MomentVector out = m;
  if (n % 2 == 0) {
    if (!odd_moment) {
      // continue the l-atom measure of the leading block one step
      if (l == 0)
        throw ValidationError("flat_extension: order-0 input cannot be extended");
      const Eigen::MatrixXd Hprev = leading_hankel(m, l);
      Eigen::VectorXd mu(l), shifted(l);
      for (int i = 0; i < l; ++i) {
        mu(i) = m[l + i];           // (m_l, ..., m_{2l-1})
        shifted(i) = m[l + 1 + i];  // (m_{l+1}, ..., m_{2l})
      }
      odd_moment = shifted.dot(Hprev.ldlt().solve(mu));
    }
    out.values.push_back(*odd_moment);
  } else if (odd_moment) {
    throw ValidationError("flat_extension: odd-order input already contains m_{2l+1}");
  }

  Eigen::VectorXd mu(l + 1);
  for (int i = 0; i <= l; ++i) mu(i) = out[l + 1 + i];
  out.values.push_back(mu.dot(Hl.ldlt().solve(mu)));

  // flatness: appending the new row/column must not raise the rank
  const Eigen::MatrixXd Hnext = leading_hankel(out, l + 2);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Hnext, Eigen::EigenvaluesOnly);
  const double scale = std::max(es.eigenvalues().cwiseAbs().maxCoeff(), 1e-300);
  int rank = 0;
  for (long i = 0; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()(i)) > tol.rank_rel * scale) ++rank;
  if (rank > l + 1) {
    std::ostringstream os;
    os << "flat_extension: extension has rank " << rank << " > " << (l + 1);
    throw Error(os.str());
  }
  return out;
}

MomentRealization realize_moments(const MomentVector& m, bool require_psd_observable,
                                  const Tolerances& tol) {
  const int n = m.order();
  if (n < 1) throw ValidationError("realize_moments: order must be >= 1");
  const int l = n / 2;

  if (require_psd_observable) {
    // the shifted Hankel matrix must itself be PSD for a PSD X to exist
    const HankelPair hp = build_hankel(m);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hp.B);
    if (es.eigenvalues()(0) < -tol.criterion_psd) {
      std::ostringstream os;
      os << "realize_moments: no PSD realization, shifted Hankel matrix has eigenvalue "
         << es.eigenvalues()(0) << " with witness (";
      for (long i = 0; i < es.eigenvectors().rows(); ++i)
        os << (i ? ", " : "") << es.eigenvectors()(i, 0);
      os << ")";
      throw Error(os.str());
    }
  }

  const int r = pd_rank(m, l + 1);
  if (r == 0)
    throw SingularHankelError("realize_moments: leading moment m_0 is not positive");

  // Build the order-(2r) flat data for an r-atom realization.
  const int lr = r - 1;
  MomentVector head{std::vector<double>(m.values.begin(),
                                        m.values.begin() + std::min(n, 2 * lr + 1) + 1)};
  std::optional<double> odd;
  if (head.order() == 2 * lr && require_psd_observable && lr >= 1) {
    // B-flat odd moment keeps the shifted Hankel matrix PSD when possible
    Eigen::MatrixXd Bprev(lr, lr);
    for (int i = 0; i < lr; ++i)
      for (int j = 0; j < lr; ++j) Bprev(i, j) = head[i + j + 1];
    if (min_eig_sym(Bprev) > 1e-10) {
      Eigen::VectorXd nu(lr);
      for (int i = 0; i < lr; ++i) nu(i) = head[lr + 1 + i];
      odd = nu.dot(Bprev.ldlt().solve(nu));
    }
  }
  const MomentVector ext = flat_extension(head, odd, tol);

  // Factor H_{r} (size (r+1)^2, rank r) as F^T F with F r x (r+1); columns
  // of F realize the moment inner products <phi_i, phi_j> = m_{i+j}.
  const Eigen::MatrixXd Hext = leading_hankel(ext, r + 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Hext);
  Eigen::MatrixXd F(r, r + 1);
  for (int i = 0; i < r; ++i) {
    const long idx = r - i;  // largest eigenvalues first
    const double lam = std::max(es.eigenvalues()(idx), 0.0);
    F.row(i) = std::sqrt(lam) * es.eigenvectors().col(idx).transpose();
  }

  const Eigen::MatrixXd Phi = F.leftCols(r);
  const Eigen::MatrixXd PhiShift = F.rightCols(r);
  Eigen::MatrixXd X = PhiShift * Phi.inverse();
  X = 0.5 * (X + X.transpose().eval());

  MomentRealization real;
  real.vector = F.col(0);
  real.observable = X;

  // verify the realization against every supplied moment
  Eigen::VectorXd v = real.vector;  // X^k phi
  for (int k = 0; k <= n; ++k) {
    const double got = real.vector.dot(v);
    if (std::abs(got - m[k]) > tol.moment_match * std::max(1.0, std::abs(m[k]))) {
      std::ostringstream os;
      os << "realize_moments: sequence is not exactly realizable (moment " << k
         << " reproduces as " << got << " vs " << m[k] << ")";
      throw SingularHankelError(os.str());
    }
    if (k < n) v = X * v;
  }

  if (require_psd_observable) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ex(X);
    if (ex.eigenvalues()(0) < -tol.moment_match) {
      std::ostringstream os;
      os << "realize_moments: no PSD realization, observable has eigenvalue "
         << ex.eigenvalues()(0) << " with witness (";
      for (long i = 0; i < ex.eigenvectors().rows(); ++i)
        os << (i ? ", " : "") << ex.eigenvectors()(i, 0);
      os << ")";
      throw Error(os.str());
    }
  }
  return real;
}

}  // namespace ptmom
