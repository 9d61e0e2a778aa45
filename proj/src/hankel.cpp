#include "ptmom/hankel.hpp"

#include <cmath>
#include <sstream>

#include "ptmom/linalg.hpp"

namespace ptmom {

namespace {

// Integer power with exact sign semantics for negative bases.
double ipow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

Eigen::MatrixXd hankel_from(const MomentVector& m, int size, int shift) {
  Eigen::MatrixXd h(size, size);
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) h(i, j) = m[i + j + shift];
  return h;
}

int odd_order(const MomentVector& p, int n) {
  if (n < 3) throw UnsupportedOrderError("moment criterion needs order >= 3");
  if (p.order() < n) {
    std::ostringstream os;
    os << "moment vector has order " << p.order() << ", need " << n;
    throw ValidationError(os.str());
  }
  return (n % 2 == 0) ? n - 1 : n;
}

}  // namespace

HankelPair build_hankel(const MomentVector& m) {
  const int n = m.order();
  if (n < 1) throw ValidationError("moment vector must have order >= 1");
  HankelPair hp;
  hp.h_order = n / 2;
  hp.b_order = (n - 1) / 2;
  hp.H = hankel_from(m, hp.h_order + 1, 0);
  hp.B = hankel_from(m, hp.b_order + 1, 1);
  return hp;
}

bool pn_ppt_check(const MomentVector& p, int n, const Tolerances& tol) {
  const int no = odd_order(p, n);
  MomentVector head{std::vector<double>(p.values.begin(), p.values.begin() + no + 1)};
  const HankelPair hp = build_hankel(head);
  return min_eigenvalue(hp.B.cast<std::complex<double>>(), tol) >= -tol.criterion_psd;
}

double hankel_negativity(const MomentVector& p, int n, const Tolerances& tol) {
  const int no = odd_order(p, n);
  MomentVector head{std::vector<double>(p.values.begin(), p.values.begin() + no + 1)};
  const HankelPair hp = build_hankel(head);
  const Spectrum s = eigenvalues_hermitian(hp.B.cast<std::complex<double>>(), tol);
  double neg = 0.0;
  for (long i = 0; i < s.values.size(); ++i) neg += std::max(0.0, -s.values(i));
  return neg;
}

std::vector<std::pair<int, bool>> elben_higher_check(const MomentVector& p) {
  std::vector<std::pair<int, bool>> out;
  for (int n = 3; n <= p.order(); ++n) {
    const double lhs = ipow(p[n], n - 2);
    const double rhs = ipow(p[n - 1], n - 1);
    const double slack = 1e-12 * std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    out.emplace_back(n, lhs >= rhs - slack);
  }
  return out;
}

}  // namespace ptmom
