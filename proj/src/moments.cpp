#include "ptmom/moments.hpp"

#include <cmath>
#include <sstream>

namespace ptmom {

MomentVector moments_of_spectrum(const Spectrum& spec, int n) {
  if (n < 1) throw ValidationError("moment order must be >= 1");
  MomentVector m;
  m.values.assign(static_cast<size_t>(n) + 1, 0.0);
  m.values[0] = static_cast<double>(spec.values.size());
  Eigen::VectorXd pw = Eigen::VectorXd::Ones(spec.values.size());
  for (int k = 1; k <= n; ++k) {
    pw = pw.cwiseProduct(spec.values);
    m.values[static_cast<size_t>(k)] = pw.sum();
  }
  return m;
}

MomentVector moments_of_spectrum(const std::vector<double>& values, int n) {
  Spectrum s;
  s.values = Eigen::Map<const Eigen::VectorXd>(values.data(),
                                               static_cast<long>(values.size()));
  return moments_of_spectrum(s, n);
}

MomentVector pt_moments(const BipartiteState& s, int n, const Tolerances& tol) {
  if (n < 1) throw ValidationError("moment order must be >= 1");
  const Spectrum spec = eigenvalues_hermitian(partial_transpose(s), tol);
  MomentVector m = moments_of_spectrum(spec, n);
  if (std::abs(m.values[1] - 1.0) > 1e-9) {
    std::ostringstream os;
    os << "partial transpose trace is " << m.values[1] << ", expected 1";
    throw ValidationError(os.str());
  }
  const double d = m.values[0];
  if (n >= 2 && (m.values[2] < 1.0 / d - 1e-9 || m.values[2] > 1.0 + 1e-9))
    throw ValidationError("second moment outside [1/d, 1]");
  return m;
}

double purity(const BipartiteState& s, const Tolerances& tol) {
  const double direct = s.matrix().squaredNorm();  // tr(rho^2) for Hermitian rho
  const double via_pt = pt_moments(s, 2, tol).values[2];
  if (std::abs(direct - via_pt) > 1e-9) {
    std::ostringstream os;
    os << "purity mismatch: direct " << direct << " vs partial-transpose route " << via_pt;
    throw ValidationError(os.str());
  }
  return direct;
}

}  // namespace ptmom
