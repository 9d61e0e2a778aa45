#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "ptmom/optimal_bounds.hpp"

// Reference optimizer for extremal power sums.  Everything here is kept
// deliberately independent of the closed-form solvers: plain multiplicity
// enumeration with a damped least-squares iteration, cross-checked by a
// projected local search over full d-dimensional spectra.

namespace ptmom {

namespace {

double powi(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

// residuals F_k = sum_i m_i x_i^k - p_k for k = 1..K and their Jacobian
void residuals(const std::vector<int>& m, const Eigen::VectorXd& x,
               const std::vector<double>& target, Eigen::VectorXd& F,
               Eigen::MatrixXd* J) {
  const int r = static_cast<int>(m.size());
  const int K = static_cast<int>(target.size());
  F.resize(K);
  if (J) J->resize(K, r);
  for (int k = 1; k <= K; ++k) {
    double s = 0.0;
    for (int i = 0; i < r; ++i) s += m[static_cast<size_t>(i)] * powi(x(i), k);
    F(k - 1) = s - target[static_cast<size_t>(k - 1)];
    if (J)
      for (int i = 0; i < r; ++i)
        (*J)(k - 1, i) = k * m[static_cast<size_t>(i)] * powi(x(i), k - 1);
  }
}

// Levenberg-Marquardt on the power-sum residuals; true when the final
// residual is below 1e-10 in the max norm.
bool lm_solve(const std::vector<int>& m, Eigen::VectorXd& x,
              const std::vector<double>& target) {
  const int r = static_cast<int>(m.size());
  Eigen::VectorXd F;
  Eigen::MatrixXd J;
  residuals(m, x, target, F, &J);
  double cost = F.squaredNorm();
  double lambda = 1e-3;
  for (int it = 0; it < 200; ++it) {
    if (F.cwiseAbs().maxCoeff() < 1e-12) break;
    Eigen::MatrixXd A = J.transpose() * J;
    A.diagonal().array() += lambda;
    const Eigen::VectorXd dx = A.ldlt().solve(-J.transpose() * F);
    if (!dx.allFinite()) break;
    const Eigen::VectorXd xt = x + dx;
    Eigen::VectorXd Ft;
    residuals(m, xt, target, Ft, nullptr);
    const double ct = Ft.squaredNorm();
    if (ct < cost) {
      x = xt;
      cost = ct;
      lambda = std::max(lambda * 0.3, 1e-12);
      residuals(m, x, target, F, &J);
    } else {
      lambda *= 2.5;
      if (lambda > 1e12) break;
    }
  }
  residuals(m, x, target, F, nullptr);
  return F.cwiseAbs().maxCoeff() < 1e-10;
}

// all ordered multiplicity tuples (m_1..m_r), 1 <= r <= rmax, sum <= d
void enumerate_compositions(int d, int rmax, std::vector<int>& cur,
                            std::vector<std::vector<int>>& out) {
  if (!cur.empty()) out.push_back(cur);
  if (static_cast<int>(cur.size()) == rmax) return;
  int used = 0;
  for (int m : cur) used += m;
  for (int m = 1; m + used <= d; ++m) {
    cur.push_back(m);
    enumerate_compositions(d, rmax, cur, out);
    cur.pop_back();
  }
}

struct Candidate {
  double value;
  Eigen::VectorXd spectrum;  // descending, length d
};

Eigen::VectorXd expand(const std::vector<int>& m, const Eigen::VectorXd& x, int d) {
  Eigen::VectorXd s = Eigen::VectorXd::Zero(d);
  int at = 0;
  for (size_t i = 0; i < m.size(); ++i)
    for (int c = 0; c < m[i]; ++c) s(at++) = std::max(x(static_cast<int>(i)), 0.0);
  std::sort(s.begin(), s.end(), std::greater<double>());
  return s;
}

bool admissible(const std::vector<int>& m, const Eigen::VectorXd& x,
                const std::vector<double>& target) {
  for (int i = 0; i < x.size(); ++i)
    if (x(i) < -1e-10) return false;
  Eigen::VectorXd F;
  Eigen::VectorXd xc = x.cwiseMax(0.0);
  residuals(m, xc, target, F, nullptr);
  return F.cwiseAbs().maxCoeff() < 1e-9;
}

// -------- projected local search over full spectra --------------------------

void constraint_data(const Eigen::VectorXd& x, const std::vector<double>& target,
                     Eigen::VectorXd& g, Eigen::MatrixXd& J) {
  const int K = static_cast<int>(target.size());
  const int d = static_cast<int>(x.size());
  g.resize(K);
  J.resize(K, d);
  for (int k = 1; k <= K; ++k) {
    double s = 0.0;
    for (int i = 0; i < d; ++i) {
      s += powi(x(i), k);
      J(k - 1, i) = k * powi(x(i), k - 1);
    }
    g(k - 1) = s - target[static_cast<size_t>(k - 1)];
  }
}

// min-norm Newton restoration onto the constraint manifold, x kept >= 0
bool restore(Eigen::VectorXd& x, const std::vector<double>& target) {
  Eigen::VectorXd g;
  Eigen::MatrixXd J;
  for (int it = 0; it < 80; ++it) {
    constraint_data(x, target, g, J);
    if (g.cwiseAbs().maxCoeff() < 1e-12) return true;
    Eigen::MatrixXd JJt = J * J.transpose();
    JJt.diagonal().array() += 1e-12;
    const Eigen::VectorXd dx = J.transpose() * JJt.ldlt().solve(-g);
    if (!dx.allFinite()) return false;
    x = (x + dx).cwiseMax(0.0);
  }
  constraint_data(x, target, g, J);
  return g.cwiseAbs().maxCoeff() < 1e-9;
}

void local_search(int d, int n, const std::vector<double>& target, bool maximize,
                  std::vector<Candidate>& out) {
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ (static_cast<uint64_t>(d) << 8) ^
                      static_cast<uint64_t>(n) ^ (maximize ? 0x5555ULL : 0xaaaaULL));
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  const int restarts = 24;
  for (int rs = 0; rs < restarts; ++rs) {
    Eigen::VectorXd x(d);
    const double q = 0.05 + 0.9 * unif(rng);
    for (int i = 0; i < d; ++i) x(i) = powi(q, i) * (0.3 + unif(rng));
    x *= target[0] / x.sum();
    if (!restore(x, target)) continue;

    Eigen::VectorXd g;
    Eigen::MatrixXd J;
    double eta = 0.1;
    for (int it = 0; it < 400; ++it) {
      constraint_data(x, target, g, J);
      Eigen::VectorXd grad(d);
      for (int i = 0; i < d; ++i) grad(i) = n * powi(x(i), n - 1);
      Eigen::MatrixXd JJt = J * J.transpose();
      JJt.diagonal().array() += 1e-12;
      const Eigen::VectorXd h = grad - J.transpose() * JJt.ldlt().solve(J * grad);
      if (h.norm() < 1e-13) break;
      Eigen::VectorXd xt =
          (x + (maximize ? eta : -eta) * h / std::max(h.norm(), 1e-30)).cwiseMax(0.0);
      if (!restore(xt, target)) {
        eta *= 0.5;
        if (eta < 1e-12) break;
        continue;
      }
      double cur = 0.0, nxt = 0.0;
      for (int i = 0; i < d; ++i) {
        cur += powi(x(i), n);
        nxt += powi(xt(i), n);
      }
      if ((maximize && nxt > cur + 1e-15) || (!maximize && nxt < cur - 1e-15)) {
        x = xt;
      } else {
        eta *= 0.5;
        if (eta < 1e-12) break;
      }
    }
    if (!restore(x, target)) continue;
    Eigen::VectorXd s = x;
    std::sort(s.begin(), s.end(), std::greater<double>());
    double val = 0.0;
    for (int i = 0; i < d; ++i) val += powi(s(i), n);
    out.push_back({val, s});
  }
}

}  // namespace

OracleExtremum oracle_optimize(const MomentVector& p, int n, int d, bool maximize,
                               const Tolerances& tol) {
  if (n < 3 || n > 5) throw UnsupportedOrderError("oracle handles orders 3..5");
  if (p.order() < n - 1) throw ValidationError("oracle needs moments up to order n-1");
  std::vector<double> target;
  for (int k = 1; k < n; ++k) target.push_back(p[k]);

  std::vector<std::vector<int>> comps;
  std::vector<int> cur;
  enumerate_compositions(d, n - 1, cur, comps);

  std::vector<Candidate> cands;
  std::mt19937_64 rng(0x2545f4914f6cdd1dULL + static_cast<uint64_t>(n) * 977 +
                      static_cast<uint64_t>(d));
  std::uniform_real_distribution<double> unif(0.2, 1.8);

  for (const std::vector<int>& m : comps) {
    const int r = static_cast<int>(m.size());
    double wsum = 0.0;
    for (int mi : m) wsum += mi;

    std::vector<Eigen::VectorXd> starts;
    for (const double q : {0.1, 0.25, 0.4, 0.55, 0.7, 0.85, 0.97}) {
      Eigen::VectorXd x(r);
      double norm = 0.0;
      for (int i = 0; i < r; ++i) {
        x(i) = powi(q, i);
        norm += m[static_cast<size_t>(i)] * x(i);
      }
      starts.push_back(x * (target[0] / norm));
    }
    for (int j = 0; j < 3; ++j) {
      Eigen::VectorXd x(r);
      double norm = 0.0;
      for (int i = 0; i < r; ++i) {
        x(i) = unif(rng) * powi(0.5, i);
        norm += m[static_cast<size_t>(i)] * x(i);
      }
      starts.push_back(x * (target[0] / norm));
    }

    for (Eigen::VectorXd& x : starts) {
      if (!lm_solve(m, x, target)) continue;
      if (!admissible(m, x, target)) continue;
      Eigen::VectorXd s = expand(m, x, d);
      bool dup = false;
      for (const Candidate& c : cands)
        if ((c.spectrum - s).cwiseAbs().maxCoeff() < 1e-8) {
          dup = true;
          break;
        }
      if (!dup) {
        double val = 0.0;
        for (int i = 0; i < d; ++i) val += powi(s(i), n);
        cands.push_back({val, s});
      }
    }
  }

  local_search(d, n, target, maximize, cands);

  const Candidate* best = nullptr;
  for (const Candidate& c : cands) {
    if (!best || (maximize && c.value > best->value) ||
        (!maximize && c.value < best->value))
      best = &c;
  }
  if (!best) throw InfeasibleError(n - 1, "oracle found no spectrum matching the moments");

  // final consistency audit against the requested moments
  for (int k = 1; k < n; ++k) {
    double s = 0.0;
    for (int i = 0; i < d; ++i) s += powi(best->spectrum(i), k);
    if (std::abs(s - p[k]) > tol.moment_match)
      throw Error("oracle extremum fails to reproduce the input moments");
  }

  return OracleExtremum{best->value, best->spectrum};
}

}  // namespace ptmom
