#include "ptmom/optimal_bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <vector>

namespace ptmom {

namespace {

double ipow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

int dimension_of(const MomentVector& p) {
  const double d0 = p.values.at(0);
  const int d = static_cast<int>(std::lround(d0));
  if (d < 2 || std::abs(d0 - d) > 1e-9)
    throw ValidationError("moment vector must carry an integer dimension >= 2 as p_0");
  return d;
}

// floor(1/p2) with ties at exact reciprocals resolved upward, so that the
// convention 1/(alpha+1) < p2 <= 1/alpha holds.
int reciprocal_floor(double p2) {
  const double r = 1.0 / p2;
  int a = static_cast<int>(std::floor(r));
  if (r - a > 1.0 - 1e-9) ++a;
  return std::max(a, 1);
}

// w1 copies of u and w2 copies of v (u >= v) with sum S and square sum Q.
struct TwoValue {
  double u, v;
};

std::optional<TwoValue> two_value_split(double w1, double w2, double S, double Q) {
  const double W = w1 + w2;
  double disc = w1 * w2 * (W * Q - S * S);
  if (disc < 0) {
    if (disc < -1e-11 * std::max(1.0, W * W)) return std::nullopt;
    disc = 0.0;
  }
  const double root = std::sqrt(disc);
  return TwoValue{(S * w1 + root) / (w1 * W), (S * w2 - root) / (w2 * W)};
}

// Root of a bracketed monotone residual.  The bracketing property is part of
// the solver's premise and is checked here; small sign slack at the ends is
// absorbed by returning the endpoint.
double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   const char* what) {
  double flo = f(lo), fhi = f(hi);
  const double slack = 1e-9;
  if (flo > 0.0 && fhi > 0.0) {
    if (std::min(flo, fhi) > slack) {
      std::ostringstream os;
      os << what << ": residual bracket violated (" << flo << ", " << fhi << ")";
      throw Error(os.str());
    }
    return flo < fhi ? lo : hi;
  }
  if (flo < 0.0 && fhi < 0.0) {
    if (std::max(flo, fhi) < -slack) {
      std::ostringstream os;
      os << what << ": residual bracket violated (" << flo << ", " << fhi << ")";
      throw Error(os.str());
    }
    return flo > fhi ? lo : hi;
  }
  const bool increasing = flo <= fhi;
  for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm <= 0.0) == increasing)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Damped Newton refinement of a small power-sum system
// sum_i w_i v_i^k = t_k for k = 1..K (K = number of targets).
bool newton_power_system(const std::vector<double>& w, std::vector<double>& v,
                         const std::vector<double>& t) {
  const int r = static_cast<int>(w.size());
  const int K = static_cast<int>(t.size());
  Eigen::VectorXd F(K);
  Eigen::MatrixXd J(K, r);
  auto fill = [&](const std::vector<double>& x, Eigen::VectorXd& out) {
    std::vector<double> pw(static_cast<size_t>(r), 1.0);
    for (int k = 1; k <= K; ++k) {
      double s = 0.0;
      for (int i = 0; i < r; ++i) {
        pw[static_cast<size_t>(i)] *= x[static_cast<size_t>(i)];
        s += w[static_cast<size_t>(i)] * pw[static_cast<size_t>(i)];
      }
      out(k - 1) = s - t[static_cast<size_t>(k - 1)];
    }
  };
  fill(v, F);
  double fn = F.cwiseAbs().maxCoeff();
  for (int it = 0; it < 100; ++it) {
    if (fn < 1e-13) return true;
    // converging runs are near machine precision well before 20 iterations;
    // a residual still above 1e-7 there means a wrong basin, and large
    // enumerations visit far more hopeless starts than good ones
    if (it == 20 && fn > 1e-7) return false;
    for (int i = 0; i < r; ++i) {
      double pw = 1.0;
      for (int k = 1; k <= K; ++k) {
        J(k - 1, i) = k * w[static_cast<size_t>(i)] * pw;
        pw *= v[static_cast<size_t>(i)];
      }
    }
    const Eigen::VectorXd dv = J.colPivHouseholderQr().solve(-F);
    if (!dv.allFinite()) return false;
    double step = 1.0;
    bool moved = false;
    for (int h = 0; h < 30; ++h) {
      std::vector<double> trial = v;
      for (int i = 0; i < r; ++i) trial[static_cast<size_t>(i)] += step * dv(i);
      Eigen::VectorXd Ft(K);
      fill(trial, Ft);
      const double fnt = Ft.cwiseAbs().maxCoeff();
      if (fnt < fn) {
        v = trial;
        F = Ft;
        fn = fnt;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return fn < 1e-10;
}

double power_sum(const std::vector<double>& w, const std::vector<double>& v, int k) {
  double s = 0.0;
  for (size_t i = 0; i < w.size(); ++i) s += w[i] * ipow(v[i], k);
  return s;
}

Eigen::VectorXd assemble_spectrum(int d, const std::vector<int>& mult,
                                  const std::vector<double>& v) {
  Eigen::VectorXd s = Eigen::VectorXd::Zero(d);
  int at = 0;
  for (size_t i = 0; i < mult.size(); ++i)
    for (int c = 0; c < mult[i]; ++c) s(at++) = std::max(v[i], 0.0);
  std::sort(s.begin(), s.end(), std::greater<double>());
  return s;
}

void check_witness(const Eigen::VectorXd& s, const MomentVector& p, int upto,
                   const Tolerances& tol, const char* what) {
  for (int k = 1; k <= upto; ++k) {
    double sum = 0.0;
    for (long i = 0; i < s.size(); ++i) sum += ipow(s(i), k);
    if (std::abs(sum - p[k]) > tol.moment_match) {
      std::ostringstream os;
      os << what << ": witness spectrum reproduces moment " << k << " as " << sum
         << " vs " << p[k];
      throw Error(os.str());
    }
  }
}

}  // namespace

OptimalBounds p3_bounds(double p2, int d, const Tolerances& tol) {
  if (d < 2) throw ValidationError("p3_bounds: dimension must be >= 2");
  if (p2 < 1.0 / d - tol.feasibility || p2 > 1.0 + tol.feasibility) {
    std::ostringstream os;
    os << "p3_bounds: p_2 = " << p2 << " outside [1/" << d << ", 1]";
    throw InfeasibleError(2, os.str());
  }
  p2 = std::clamp(p2, 1.0 / d, 1.0);

  OptimalBounds b;
  b.order = 3;
  if (p2 <= 1.0 / d + 1e-12) {  // maximally mixed: unique spectrum
    b.p_min = b.p_max = 1.0 / (static_cast<double>(d) * d);
    b.spectrum_min = Eigen::VectorXd::Constant(d, 1.0 / d);
    b.spectrum_max = b.spectrum_min;
    b.mult.alpha = d;
    return b;
  }
  if (p2 >= 1.0 - 1e-12) {  // pure: unique spectrum
    b.p_min = b.p_max = 1.0;
    b.spectrum_min = Eigen::VectorXd::Zero(d);
    b.spectrum_min(0) = 1.0;
    b.spectrum_max = b.spectrum_min;
    b.mult.alpha = 1;
    return b;
  }

  const int alpha = std::min(reciprocal_floor(p2), d - 1);
  const TwoValue lo = *two_value_split(alpha, 1.0, 1.0, p2);
  b.p_min = alpha * ipow(lo.u, 3) + ipow(lo.v, 3);
  b.spectrum_min = assemble_spectrum(d, {alpha, 1}, {lo.u, lo.v});

  const TwoValue hi = *two_value_split(1.0, d - 1.0, 1.0, p2);
  b.p_max = ipow(hi.u, 3) + (d - 1) * ipow(hi.v, 3);
  b.spectrum_max = assemble_spectrum(d, {1, d - 1}, {hi.u, hi.v});
  b.mult.alpha = alpha;
  return b;
}

Feasibility feasibility_order3(const MomentVector& p, const Tolerances& tol) {
  Feasibility f;
  if (p.order() < 3) throw ValidationError("feasibility_order3: order must be >= 3");
  const int d = dimension_of(p);
  if (std::abs(p[1] - 1.0) > tol.feasibility) {
    std::ostringstream os;
    os << "p_1 = " << p[1] << " != 1";
    return Feasibility{false, 1, os.str()};
  }
  if (p[2] < 1.0 / d - tol.feasibility || p[2] > 1.0 + tol.feasibility) {
    std::ostringstream os;
    os << "p_2 = " << p[2] << " outside [1/" << d << ", 1]";
    return Feasibility{false, 2, os.str()};
  }
  const OptimalBounds b = p3_bounds(p[2], d, tol);
  if (p[3] < b.p_min - tol.feasibility) {
    std::ostringstream os;
    os << "p_3 = " << p[3] << " below sharp lower bound " << b.p_min;
    return Feasibility{false, 3, os.str()};
  }
  if (p[3] > b.p_max + tol.feasibility) {
    std::ostringstream os;
    os << "p_3 = " << p[3] << " above sharp upper bound " << b.p_max;
    return Feasibility{false, 3, os.str()};
  }
  return f;
}

namespace {

// Collapses the bounds record when the witness spectrum is forced.
OptimalBounds unique_spectrum_bounds(int order, const Eigen::VectorXd& s,
                                     const Multiplicities& mult) {
  OptimalBounds b;
  b.order = order;
  double v = 0.0;
  for (long i = 0; i < s.size(); ++i) v += ipow(s(i), order);
  b.p_min = b.p_max = v;
  b.spectrum_min = b.spectrum_max = s;
  b.mult = mult;
  return b;
}

}  // namespace

OptimalBounds p4_bounds(const MomentVector& p, const Tolerances& tol) {
  if (p.order() < 3) throw ValidationError("p4_bounds: order must be >= 3");
  const int d = dimension_of(p);
  const Feasibility feas = feasibility_order3(p, tol);
  if (!feas.ok) throw InfeasibleError(feas.failed_order, "p4_bounds: " + feas.reason);

  const double p2 = std::clamp(p[2], 1.0 / d, 1.0);
  const double p3 = p[3];
  const OptimalBounds b3 = p3_bounds(p2, d, tol);

  // at the sharp order-3 ends (and at the mixed/pure corners) the spectrum
  // is already forced by (p_2, p_3)
  if (b3.p_max - b3.p_min <= 1e-12 || p3 <= b3.p_min + 1e-12)
    return unique_spectrum_bounds(4, b3.spectrum_min, b3.mult);
  if (p3 >= b3.p_max - 1e-12)
    return unique_spectrum_bounds(4, b3.spectrum_max, b3.mult);

  OptimalBounds b;
  b.order = 4;
  b.mult.alpha = b3.mult.alpha;
  const int alpha = *b3.mult.alpha;

  // ---- upper end: spectrum (x1, x2 * beta, z, 0...) -----------------------
  {
    const double lo = std::max(1.0, (1.0 - p2) / p2);
    const double hi = static_cast<double>(d - 1);
    auto resid = [&](double beta0) {
      const TwoValue tv = *two_value_split(1.0, beta0, 1.0, p2);
      return ipow(tv.u, 3) + beta0 * ipow(tv.v, 3) - p3;
    };
    const double beta0 = bisect_root(resid, lo, hi, "p4 upper multiplicity solve");
    int beta = static_cast<int>(std::floor(beta0 + 1e-9));
    if (beta0 >= d - 1 - 1e-9 || std::abs(beta0 - beta) <= 1e-9) {
      // integer surrogate: the two-value structure is itself the maximizer
      beta = std::min(beta, d - 1);
      const TwoValue tv = *two_value_split(1.0, beta, 1.0, p2);
      b.p_max = ipow(tv.u, 4) + beta * ipow(tv.v, 4);
      b.spectrum_max = assemble_spectrum(d, {1, beta}, {tv.u, tv.v});
      b.mult.beta = beta;
    } else {
      beta = std::clamp(beta, 1, d - 2);
      const double z_hi = two_value_split(1.0, beta + 1.0, 1.0, p2)->v;
      double z_lo = 0.0;
      if ((beta + 1) * p2 - 1.0 < 0.0) {
        const double inner = (beta + 1.0) * ((beta + 2.0) * p2 - 1.0);
        z_lo = (1.0 - std::sqrt(std::max(inner, 0.0))) / (beta + 2.0);
      }
      auto zres = [&](double z) {
        const auto tv = two_value_split(1.0, beta, 1.0 - z, p2 - z * z);
        if (!tv) return 1.0;  // above the feasible arc
        return ipow(tv->u, 3) + beta * ipow(tv->v, 3) + ipow(z, 3) - p3;
      };
      const double z = bisect_root(zres, z_lo, z_hi, "p4 upper third-value solve");
      const TwoValue tv = *two_value_split(1.0, beta, 1.0 - z, p2 - z * z);
      std::vector<double> w{1.0, static_cast<double>(beta), 1.0};
      std::vector<double> v{tv.u, tv.v, z};
      newton_power_system(w, v, {1.0, p2, p3});
      b.p_max = power_sum(w, v, 4);
      b.spectrum_max = assemble_spectrum(d, {1, beta, 1}, v);
      b.mult.beta = beta;
    }
  }

  // ---- lower end: spectrum (x1 * gamma, m, s * (d-gamma-1)) ---------------
  {
    const double lo = 1.0;
    const double hi = std::min(1.0 / p2, static_cast<double>(d - 1));
    auto resid = [&](double g0) {
      const TwoValue tv = *two_value_split(g0, d - g0, 1.0, p2);
      return g0 * ipow(tv.u, 3) + (d - g0) * ipow(tv.v, 3) - p3;
    };
    const double gamma0 = bisect_root(resid, lo, hi, "p4 lower multiplicity solve");
    int gamma = static_cast<int>(std::floor(gamma0 + 1e-9));
    if (std::abs(gamma0 - gamma) <= 1e-9 || gamma >= d - 1) {
      gamma = std::clamp(gamma, 1, d - 1);
      const TwoValue tv = *two_value_split(static_cast<double>(gamma),
                                           static_cast<double>(d - gamma), 1.0, p2);
      b.p_min = gamma * ipow(tv.u, 4) + (d - gamma) * ipow(tv.v, 4);
      b.spectrum_min = assemble_spectrum(d, {gamma, d - gamma}, {tv.u, tv.v});
      b.mult.gamma = gamma;
    } else {
      const int k2 = d - gamma - 1;
      const double x1_hi =
          two_value_split(static_cast<double>(gamma), static_cast<double>(d - gamma),
                          1.0, p2)->u;
      const double x1_lo =
          (gamma == alpha)
              ? two_value_split(static_cast<double>(gamma), 1.0, 1.0, p2)->u
              : two_value_split(gamma + 1.0, static_cast<double>(k2), 1.0, p2)->u;
      auto xres = [&](double x1) {
        const auto tv =
            two_value_split(1.0, static_cast<double>(k2), 1.0 - gamma * x1,
                            p2 - gamma * x1 * x1);
        if (!tv) return 1.0;
        return gamma * ipow(x1, 3) + ipow(tv->u, 3) + k2 * ipow(tv->v, 3) - p3;
      };
      const double x1 = bisect_root(xres, x1_lo, x1_hi, "p4 lower leading-value solve");
      const TwoValue tv = *two_value_split(1.0, static_cast<double>(k2),
                                           1.0 - gamma * x1, p2 - gamma * x1 * x1);
      std::vector<double> w{static_cast<double>(gamma), 1.0, static_cast<double>(k2)};
      std::vector<double> v{x1, tv.u, tv.v};
      newton_power_system(w, v, {1.0, p2, p3});
      b.p_min = power_sum(w, v, 4);
      b.spectrum_min = assemble_spectrum(d, {gamma, 1, k2}, v);
      b.mult.gamma = gamma;
    }
  }

  check_witness(b.spectrum_min, p, 3, tol, "p4_bounds lower witness");
  check_witness(b.spectrum_max, p, 3, tol, "p4_bounds upper witness");
  if (b.p_min > b.p_max + 1e-12) throw Error("p4_bounds: bounds crossed");
  return b;
}

namespace {

// ---- order-5 pattern enumeration ------------------------------------------

struct PatternCandidate {
  double value;                // sum of fifth powers
  std::vector<int> mult;       // multiplicities of the distinct values
  std::vector<double> values;  // the distinct values, descending
};

// Deterministic start points for the damped Newton solve of one pattern.
std::vector<std::vector<double>> pattern_starts(const std::vector<double>& w,
                                                const std::vector<Eigen::VectorXd>& hints,
                                                const std::vector<int>& mult) {
  const size_t r = w.size();
  std::vector<std::vector<double>> starts;

  for (const Eigen::VectorXd& h : hints) {
    std::vector<double> s(r, 0.0);
    int at = 0;
    bool ok = true;
    for (size_t i = 0; i < r; ++i) {
      double acc = 0.0;
      for (int c = 0; c < mult[i]; ++c) {
        if (at >= h.size()) {
          ok = false;
          break;
        }
        acc += h(at++);
      }
      if (!ok) break;
      s[i] = acc / mult[i];
    }
    if (ok) starts.push_back(std::move(s));
  }

  // averaging one hint block across two slots leaves them exactly equal,
  // which parks the start on the ridge between two root orderings; spread
  // copies of near-equal neighbours break that tie
  const size_t hint_end = starts.size();
  for (size_t b = 0; b < hint_end; ++b) {
    const std::vector<double> s = starts[b];  // copy: the loop body grows starts
    for (size_t i = 0; i + 1 < r; ++i) {
      if (std::abs(s[i] - s[i + 1]) <= 0.25 * (std::abs(s[i]) + std::abs(s[i + 1]))) {
        std::vector<double> a = s;
        a[i] *= 2.0;
        a[i + 1] *= 0.45;
        starts.push_back(std::move(a));
      }
    }
  }

  for (const double q : {0.12, 0.3, 0.5, 0.72, 0.92}) {
    std::vector<double> s(r);
    double norm = 0.0;
    for (size_t i = 0; i < r; ++i) {
      s[i] = ipow(q, static_cast<int>(i));
      norm += w[i] * s[i];
    }
    for (double& x : s) x /= norm;
    starts.push_back(std::move(s));
  }

  // two-ratio ladders: a sets the first drop, b the later ones, covering
  // spike-plus-bulk shapes a single geometric ratio cannot express
  for (const double a : {0.08, 0.3, 0.65}) {
    for (const double b : {0.1, 0.45, 0.8}) {
      std::vector<double> s(r);
      s[0] = 1.0;
      double norm = w[0];
      for (size_t i = 1; i < r; ++i) {
        s[i] = s[i - 1] * (i == 1 ? a : b);
        norm += w[i] * s[i];
      }
      for (double& x : s) x /= norm;
      starts.push_back(std::move(s));
    }
  }

  // jittered copies of the hint-derived starts widen the basin coverage
  const size_t base = starts.size();
  for (size_t b = 0; b < std::min<size_t>(base, 3); ++b) {
    for (int j = 1; j <= 2; ++j) {
      std::vector<double> s = starts[b];
      for (size_t i = 0; i < r; ++i)
        s[i] *= 1.0 + 0.18 * std::sin(3.7 * static_cast<double>(i + 1) + 1.9 * j);
      starts.push_back(std::move(s));
    }
  }
  return starts;
}

// Solves one multiplicity pattern against targets t_k (k = 1..K) and returns
// admissible solutions (descending, nonnegative, residual below 5e-9).
// extra_starts are block-value warm starts tried before everything else;
// entries whose length does not match the collapsed pattern are ignored.
std::vector<PatternCandidate> solve_pattern(
    const std::vector<int>& mult_in, const std::vector<double>& targets,
    const std::vector<Eigen::VectorXd>& hints,
    const std::vector<std::vector<double>>& extra_starts = {}) {
  std::vector<int> mult;
  for (int m : mult_in)
    if (m > 0) mult.push_back(m);
  if (mult.empty()) return {};
  std::vector<double> w(mult.begin(), mult.end());
  const size_t r = w.size();
  const int K = static_cast<int>(targets.size());

  std::vector<PatternCandidate> found;
  auto admit = [&](std::vector<double> v) {
    for (double& x : v)
      if (x < 0.0 && x > -1e-10) x = 0.0;
    for (size_t i = 0; i < r; ++i) {
      if (v[i] < 0.0) return;
      if (i + 1 < r && v[i] < v[i + 1] - 1e-9) return;  // ordering owned by another pattern
    }
    for (int k = 1; k <= K; ++k)
      if (std::abs(power_sum(w, v, k) - targets[static_cast<size_t>(k - 1)]) > 5e-9) return;
    for (const PatternCandidate& c : found) {
      double dist = 0.0;
      for (size_t i = 0; i < r; ++i) dist = std::max(dist, std::abs(c.values[i] - v[i]));
      if (dist < 1e-8) return;
    }
    PatternCandidate c;
    c.value = power_sum(w, v, 5);
    c.mult = mult;
    c.values = std::move(v);
    found.push_back(std::move(c));
  };

  if (r == 1) {
    std::vector<double> v{targets[0] / w[0]};
    admit(std::move(v));
    return found;
  }
  if (r == 2) {
    const auto tv = two_value_split(w[0], w[1], targets[0], targets[1]);
    if (tv) admit({tv->u, tv->v});
    return found;
  }

  const std::vector<double> tsolve(targets.begin(),
                                   targets.begin() + std::min<size_t>(r, targets.size()));
  std::vector<std::vector<double>> starts;
  for (const std::vector<double>& s : extra_starts)
    if (s.size() == r) starts.push_back(s);
  for (std::vector<double>& s : pattern_starts(w, hints, mult)) starts.push_back(std::move(s));
  for (std::vector<double>& s : starts) {
    if (!newton_power_system(w, s, tsolve)) continue;
    // a misordered root belongs to a different pattern, but its sorted values
    // already match the first moments closely; one more solve from the sorted
    // point often reaches this pattern's own (descending) root
    std::vector<double> retry;
    for (size_t i = 0; i + 1 < r; ++i) {
      if (s[i] < s[i + 1] - 1e-9) {
        retry = s;
        std::sort(retry.begin(), retry.end(), std::greater<double>());
        break;
      }
    }
    admit(std::move(s));
    if (!retry.empty() && newton_power_system(w, retry, tsolve)) admit(std::move(retry));
  }
  return found;
}

struct ScanResult {
  bool early = false;  // inner value bracketed before full enumeration
  OptimalBounds bounds;
};

// Shared enumeration behind p5_bounds and the order-5 violation check.  When
// `inner` is set, enumeration stops as soon as candidates on both sides
// bracket that value (then only `early` is meaningful).
ScanResult p5_scan(const MomentVector& p, const Tolerances& tol, const double* inner) {
  const int d = dimension_of(p);
  const OptimalBounds b4 = p4_bounds(p, tol);
  const double p4 = p[4];
  if (p4 < b4.p_min - tol.feasibility) {
    std::ostringstream os;
    os << "p_4 = " << p4 << " below sharp lower bound " << b4.p_min;
    throw InfeasibleError(4, os.str());
  }
  if (p4 > b4.p_max + tol.feasibility) {
    std::ostringstream os;
    os << "p_4 = " << p4 << " above sharp upper bound " << b4.p_max;
    throw InfeasibleError(4, os.str());
  }

  ScanResult res;
  if (b4.p_max - b4.p_min <= 1e-12 || p4 <= b4.p_min + 1e-12) {
    res.bounds = unique_spectrum_bounds(5, b4.spectrum_min, b4.mult);
    res.early = inner && *inner >= res.bounds.p_min - tol.detection &&
                *inner <= res.bounds.p_max + tol.detection;
    return res;
  }
  if (p4 >= b4.p_max - 1e-12) {
    res.bounds = unique_spectrum_bounds(5, b4.spectrum_max, b4.mult);
    res.early = inner && *inner >= res.bounds.p_min - tol.detection &&
                *inner <= res.bounds.p_max + tol.detection;
    return res;
  }

  const std::vector<double> targets{1.0, p[2], p[3], p4};
  const std::vector<Eigen::VectorXd> hints{b4.spectrum_max, b4.spectrum_min};

  OptimalBounds b;
  b.order = 5;
  bool have_max = false, have_min = false;
  PatternCandidate best_max, best_min;
  std::optional<int> kappa, eta, xi;

  auto consider = [&](const std::vector<PatternCandidate>& cands, bool max_side,
                      std::optional<int> k_or_eta, std::optional<int> xi_val) {
    for (const PatternCandidate& c : cands) {
      if (!have_max || c.value > best_max.value) {
        best_max = c;
        have_max = true;
        kappa = max_side ? k_or_eta : std::nullopt;
      }
      if (!have_min || c.value < best_min.value) {
        best_min = c;
        have_min = true;
        eta = max_side ? std::nullopt : k_or_eta;
        xi = max_side ? std::nullopt : xi_val;
      }
    }
  };

  auto bracketed = [&]() {
    return inner && have_max && have_min && *inner <= best_max.value + tol.detection &&
           *inner >= best_min.value - tol.detection;
  };
  // block values of the collapsed candidate, restored to the full slot layout
  // (an absent middle block borrows its neighbors' midpoint so the next
  // pattern in the sweep starts close to this solution)
  auto per_slot = [](const PatternCandidate& c, const std::vector<int>& mult) {
    std::vector<double> s(mult.size(), 0.0);
    int at = 0;
    for (size_t i = 0; i < mult.size(); ++i)
      if (mult[i] > 0) s[i] = c.values[static_cast<size_t>(at++)];
    for (size_t i = 0; i < mult.size(); ++i)
      if (mult[i] == 0 && i > 0 && i + 1 < mult.size()) s[i] = 0.5 * (s[i - 1] + s[i + 1]);
    return s;
  };
  auto collapsed = [](const std::vector<double>& slots, const std::vector<int>& mult) {
    std::vector<double> s;
    for (size_t i = 0; i < mult.size(); ++i)
      if (mult[i] > 0) s.push_back(slots[i]);
    return s;
  };

  // maximizing family (x1, x2 * kappa, x3, x4 * rest), swept with continuation:
  // each kappa warm-starts from the solution at the previous kappa
  std::vector<double> warm;
  for (int kap = 0; kap <= d - 2; ++kap) {
    const std::vector<int> mult{1, kap, 1, d - kap - 2};
    std::vector<std::vector<double>> extra;
    if (!warm.empty()) extra.push_back(collapsed(warm, mult));
    const std::vector<PatternCandidate> cands = solve_pattern(mult, targets, hints, extra);
    consider(cands, true, kap, std::nullopt);
    if (!cands.empty()) warm = per_slot(cands.front(), mult);
    if (bracketed()) {
      res.early = true;
      return res;
    }
  }

  // minimizing family (x1 * eta, x2, x3 * xi, x4, 0...), continuation along xi
  // inside each row and along eta between rows
  std::vector<double> row_warm;
  for (int e = 1; e <= d - 2; ++e) {
    warm = row_warm;
    for (int x = 0; x <= d - e - 2; ++x) {
      const std::vector<int> mult{e, 1, x, 1};
      std::vector<std::vector<double>> extra;
      if (!warm.empty()) extra.push_back(collapsed(warm, mult));
      const std::vector<PatternCandidate> cands = solve_pattern(mult, targets, hints, extra);
      consider(cands, false, e, x);
      if (!cands.empty()) {
        warm = per_slot(cands.front(), mult);
        if (x == 0) row_warm = warm;
      }
      if (bracketed()) {
        res.early = true;
        return res;
      }
    }
  }

  // corners where consecutive levels of either family coincide collapse to a
  // plain two-level spectrum; sweeping those directly costs one closed form each
  for (int a = 1; a < d; ++a) {
    for (int rest = 1; rest <= d - a; ++rest) {
      consider(solve_pattern({a, rest}, targets, hints), true, std::nullopt, std::nullopt);
      if (bracketed()) {
        res.early = true;
        return res;
      }
    }
  }

  if (!have_max || !have_min)
    throw Error("p5 bound enumeration produced no admissible spectrum");

  b.p_max = best_max.value;
  b.p_min = best_min.value;
  b.spectrum_max = assemble_spectrum(d, best_max.mult, best_max.values);
  b.spectrum_min = assemble_spectrum(d, best_min.mult, best_min.values);
  b.mult.alpha = b4.mult.alpha;
  b.mult.kappa = kappa;
  b.mult.eta = eta;
  b.mult.xi = xi;
  check_witness(b.spectrum_min, p, 4, tol, "p5_bounds lower witness");
  check_witness(b.spectrum_max, p, 4, tol, "p5_bounds upper witness");
  if (b.p_min > b.p_max + 1e-12) throw Error("p5_bounds: bounds crossed");
  res.bounds = b;
  return res;
}

}  // namespace

OptimalBounds p5_bounds(const MomentVector& p, const Tolerances& tol) {
  if (p.order() < 4) throw ValidationError("p5_bounds: order must be >= 4");
  return p5_scan(p, tol, nullptr).bounds;
}

OpptViolation oppt_violation(const MomentVector& p, int n, const Tolerances& tol) {
  if (n < 3 || n > 5)
    throw UnsupportedOrderError("optimal-bound violations are defined for orders 3..5");
  if (p.order() < n) throw ValidationError("moment vector too short for requested order");
  const int d = dimension_of(p);

  OpptViolation o;
  o.order = n;

  // order 3 is defined whenever the second-moment data is state-like
  if (std::abs(p[1] - 1.0) > tol.feasibility || p[2] < 1.0 / d - tol.feasibility ||
      p[2] > 1.0 + tol.feasibility)
    return o;

  const OptimalBounds b3 = p3_bounds(p[2], d, tol);
  const double v3 = std::max(b3.p_min - p[3], 0.0);
  if (n == 3) {
    o.defined = true;
    o.value = v3;
    return o;
  }

  // higher orders require the previous violation to vanish and the prefix to
  // stay inside the feasible body
  if (v3 > tol.detection || p[3] > b3.p_max + tol.feasibility) return o;

  const OptimalBounds b4 = p4_bounds(p, tol);
  const double v4 = std::max({b4.p_min - p[4], p[4] - b4.p_max, 0.0});
  if (n == 4) {
    o.defined = true;
    o.value = v4;
    return o;
  }

  if (v4 > tol.detection) return o;
  const double p5 = p[5];
  const ScanResult scan = p5_scan(p, tol, &p5);
  o.defined = true;
  if (scan.early) {
    o.value = 0.0;
  } else {
    o.value = std::max({scan.bounds.p_min - p5, p5 - scan.bounds.p_max, 0.0});
  }
  return o;
}

}  // namespace ptmom
