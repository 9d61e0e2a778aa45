#include "ptmom/states.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <set>
#include <sstream>

#include "ptmom/linalg.hpp"
#include "ptmom/rng.hpp"

namespace ptmom {

BipartiteState sample_hs(int dim_a, int dim_b, uint64_t seed, uint64_t index,
                         const Tolerances& tol) {
  if (dim_a < 2 || dim_b < 2)
    throw ValidationError("sample_hs: subsystem dimensions must be >= 2");
  (void)tol;
  const int d = dim_a * dim_b;
  PhiloxRng rng(seed, index);
  Eigen::MatrixXcd g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(i, j) = std::complex<double>(re, im);
    }
  Eigen::MatrixXcd rho = g * g.adjoint();
  rho /= rho.trace().real();
  return BipartiteState::trusted(dim_a, dim_b, rho);
}

BipartiteState werner(int d1, const Tolerances& tol) {
  if (d1 < 2) throw ValidationError("werner: local dimension must be >= 2");
  (void)tol;
  const int d = d1 * d1;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(d, d);
  // swap V|ij> = |ji>: subtract V entrywise
  for (int i = 0; i < d1; ++i)
    for (int j = 0; j < d1; ++j) m(j + d1 * i, i + d1 * j) -= 1.0;
  m /= static_cast<double>(d1) * (d1 - 1);
  return BipartiteState::trusted(d1, d1, m);
}

BipartiteState bell_state(const Tolerances& tol) {
  (void)tol;
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
  psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
  return BipartiteState::trusted(2, 2, psi * psi.adjoint());
}

BipartiteState product_state(const Eigen::VectorXd& weights, int dim_a, int dim_b,
                             const Tolerances& tol) {
  const int d = dim_a * dim_b;
  if (weights.size() > d)
    throw ValidationError("product_state: more weights than diagonal slots");
  double sum = 0.0;
  for (long i = 0; i < weights.size(); ++i) {
    if (weights(i) < -tol.state_psd)
      throw ValidationError("product_state: negative weight");
    sum += weights(i);
  }
  if (std::abs(sum - 1.0) > tol.trace)
    throw ValidationError("product_state: weights must sum to 1");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (long i = 0; i < weights.size(); ++i) m(i, i) = std::max(weights(i), 0.0);
  return BipartiteState::trusted(dim_a, dim_b, m);
}

// ---- Ising chain ------------------------------------------------------------

namespace {

void check_ising(const IsingParams& p) {
  if (p.n_qubits < 2) throw ValidationError("ising: need at least two sites");
  if (p.n_qubits > 12)
    throw ValidationError("ising: dense diagonalization capped at 12 sites");
  if (p.cut.empty() || static_cast<int>(p.cut.size()) >= p.n_qubits)
    throw ValidationError("ising: cut must be a nonempty proper subset of sites");
  std::set<int> seen;
  for (int s : p.cut) {
    if (s < 0 || s >= p.n_qubits || !seen.insert(s).second)
      throw ValidationError("ising: cut sites must be distinct and in range");
  }
}

}  // namespace

IsingSystem::IsingSystem(const IsingParams& params) : params_(params) {
  check_ising(params_);
  const int n = params_.n_qubits;
  const int dim = 1 << n;
  const double J = params_.coupling;
  const double g = params_.field_ratio;

  // site 0 carries the most significant bit; sigma_z |0> = +|0>
  auto zbit = [&](int s, int site) { return ((s >> (n - 1 - site)) & 1) ? -1 : 1; };

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (int s = 0; s < dim; ++s) {
    double zz = 0.0;
    for (int site = 0; site < n; ++site) zz += zbit(s, site) * zbit(s, (site + 1) % n);
    h(s, s) = -J * zz;
    for (int site = 0; site < n; ++site) h(s ^ (1 << (n - 1 - site)), s) += -J * g;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  energies_ = es.eigenvalues();
  modes_ = es.eigenvectors();

  // relabel the basis so the cut sites come first (most significant)
  std::vector<int> order(params_.cut);
  for (int site = 0; site < n; ++site)
    if (std::find(order.begin(), order.end(), site) == order.end())
      order.push_back(site);
  permutation_.resize(static_cast<size_t>(dim));
  for (int s = 0; s < dim; ++s) {
    int t = 0;
    for (int pos = 0; pos < n; ++pos)
      t |= ((s >> (n - 1 - order[static_cast<size_t>(pos)])) & 1) << (n - 1 - pos);
    permutation_[static_cast<size_t>(s)] = t;
  }
}

BipartiteState IsingSystem::gibbs(double inverse_temperature,
                                  const Tolerances& tol) const {
  (void)tol;
  if (inverse_temperature < 0)
    throw ValidationError("ising: inverse temperature must be nonnegative");
  const int dim = static_cast<int>(energies_.size());
  const double e0 = energies_.minCoeff();
  Eigen::VectorXd w =
      (-(inverse_temperature * (energies_.array() - e0))).exp().matrix();
  w /= w.sum();
  const Eigen::MatrixXd rho = modes_ * w.asDiagonal() * modes_.transpose();

  Eigen::MatrixXd out(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      out(permutation_[static_cast<size_t>(i)], permutation_[static_cast<size_t>(j)]) =
          rho(i, j);

  const int da = 1 << params_.cut.size();
  return BipartiteState::trusted(da, dim / da, out.cast<std::complex<double>>());
}

BipartiteState ising_gibbs(const IsingParams& params, const Tolerances& tol) {
  return IsingSystem(params).gibbs(params.inverse_temperature, tol);
}

// ---- padded-Werner counterexample -------------------------------------------

Counterexample build_counterexample(const CounterexampleParams& params,
                                    const Tolerances& tol) {
  const int d1 = params.base_dim;
  if (d1 < 3) throw ValidationError("counterexample: base dimension must be >= 3");

  // base Werner PT spectrum: top value with multiplicity d1^2-1, one -1/d1
  const double lam_top = 1.0 / (static_cast<double>(d1) * (d1 - 1));
  const double p2b = (d1 * d1 - 1.0) * lam_top * lam_top + 1.0 / (d1 * d1);
  const double p3b =
      (d1 * d1 - 1.0) * lam_top * lam_top * lam_top - 1.0 / (d1 * d1 * d1);

  const double lam = params.noise_weight.value_or(0.5 * lam_top);
  if (lam <= 0.0 || lam > 0.5 * lam_top + 1e-15)
    throw ValidationError(
        "counterexample: noise weight must lie in (0, lambda_max/2]");

  // smallest N with (1+3*lam*N)(p3 + 9 lam^3 N) > (p2 + 5 lam^2 N)^2
  auto clears = [&](double N) {
    return 2 * lam * lam * lam * lam * N * N +
           (9 * lam * lam * lam - 10 * p2b * lam * lam + 3 * p3b * lam) * N +
           (p3b - p2b * p2b);
  };
  int nblocks;
  if (params.noise_blocks) {
    nblocks = *params.noise_blocks;
    if (nblocks < 1) throw ValidationError("counterexample: need at least one noise block");
  } else {
    const double a = 2 * lam * lam * lam * lam;
    const double b = 9 * lam * lam * lam - 10 * p2b * lam * lam + 3 * p3b * lam;
    const double c = p3b - p2b * p2b;
    const double disc = b * b - 4 * a * c;
    nblocks = 1;
    if (disc > 0) {
      const double root = (-b + std::sqrt(disc)) / (2 * a);
      // strictly past the root: at equality the margin p3 - p2^2 is exactly
      // zero and the certified inequality would hinge on rounding noise
      if (std::isfinite(root))
        nblocks = std::max(1, static_cast<int>(std::floor(root + 1e-9)) + 1);
    }
    while (clears(nblocks) <= 0.0) ++nblocks;
  }

  // diagonal product noise: 2N slots on a side grid, weights 2*lam and lam
  const int grid = static_cast<int>(std::ceil(std::sqrt(2.0 * nblocks)));
  const int side = d1 + grid;
  const int d = side * side;
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(d, d);

  const BipartiteState base = werner(d1, tol);
  for (int a = 0; a < d1; ++a)
    for (int b = 0; b < d1; ++b)
      for (int ap = 0; ap < d1; ++ap)
        for (int bp = 0; bp < d1; ++bp)
          x(b + side * a, bp + side * ap) = base.matrix()(b + d1 * a, bp + d1 * ap);

  for (int slot = 0; slot < 2 * nblocks; ++slot) {
    const int a = d1 + slot / grid;
    const int b = d1 + slot % grid;
    x(b + side * a, b + side * a) = (slot < nblocks) ? 2.0 * lam : lam;
  }

  const double trace_factor = 1.0 + 3.0 * lam * nblocks;
  x /= trace_factor;
  return Counterexample{BipartiteState::trusted(side, side, x), d1, nblocks, lam,
                        trace_factor};
}

}  // namespace ptmom
