#include "ptmom/survey.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <thread>

#include "ptmom/linalg.hpp"
#include "ptmom/moments.hpp"
#include "ptmom/optimal_bounds.hpp"

namespace ptmom {

CriterionReport evaluate_state(const BipartiteState& s, int max_order,
                               const Tolerances& tol) {
  if (max_order < 3 || max_order > 5)
    throw UnsupportedOrderError("criterion evaluation supports orders 3..5");

  const Spectrum spec = eigenvalues_hermitian(partial_transpose(s), tol);
  CriterionReport r;
  for (long i = 0; i < spec.values.size(); ++i)
    r.negativity += std::max(0.0, -spec.values(i));
  r.npt = r.negativity > tol.detection;

  const MomentVector p = moments_of_spectrum(spec, 5);
  r.n3 = hankel_negativity(p, 3, tol);
  r.n5 = hankel_negativity(p, 5, tol);
  r.elben = elben_higher_check(p);

  for (int n = 3; n <= max_order; ++n) {
    const OpptViolation v = oppt_violation(p, n, tol);
    if (!v.defined) break;
    if (n == 3) r.o3 = v.value;
    if (n == 4) r.o4 = v.value;
    if (n == 5) r.o5 = v.value;
  }
  return r;
}

namespace {

int thread_budget() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("PTMOMENT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1)
      hw = std::min<unsigned>(hw, static_cast<unsigned>(std::min(v, 256L)));
  }
  return static_cast<int>(hw);
}

struct Counts {
  long npt = 0, npt3 = 0, onpt3 = 0, onpt4 = 0, npt5 = 0, onpt5 = 0;

  void add(const Counts& o) {
    npt += o.npt;
    npt3 += o.npt3;
    onpt3 += o.onpt3;
    onpt4 += o.onpt4;
    npt5 += o.npt5;
    onpt5 += o.onpt5;
  }
};

}  // namespace

SurveyResult run_survey(int D, long samples, uint64_t root_seed,
                        const SurveyCriteria& criteria, const Tolerances& tol) {
  if (D < 2) throw ValidationError("survey: local dimension must be >= 2");
  if (samples < 1) throw ValidationError("survey: need at least one sample");

  int max_order = 3;
  if (criteria.onpt4) max_order = 4;
  if (criteria.onpt5) max_order = 5;

  const int threads =
      static_cast<int>(std::min<long>(thread_budget(), samples));
  std::vector<Counts> partial(static_cast<size_t>(threads));

  auto work = [&](int t) {
    Counts& c = partial[static_cast<size_t>(t)];
    const long lo = samples * t / threads;
    const long hi = samples * (t + 1) / threads;
    for (long i = lo; i < hi; ++i) {
      const BipartiteState s =
          sample_hs(D, D, root_seed, static_cast<uint64_t>(i), tol);
      const CriterionReport r = evaluate_state(s, max_order, tol);
      const bool o3 = r.o3 && *r.o3 > tol.detection;
      const bool o4 = o3 || (r.o4 && *r.o4 > tol.detection);
      const bool o5 = o4 || (r.o5 && *r.o5 > tol.detection);
      if (r.npt) ++c.npt;
      if (r.n3 && *r.n3 > tol.detection) ++c.npt3;
      if (r.n5 && *r.n5 > tol.detection) ++c.npt5;
      if (o3) ++c.onpt3;
      if (o4) ++c.onpt4;
      if (o5) ++c.onpt5;
    }
  };

  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (std::thread& th : pool) th.join();
  }

  Counts total;
  for (const Counts& c : partial) total.add(c);

  SurveyResult res;
  res.dim = D;
  res.samples = samples;
  res.root_seed = root_seed;
  const double n = static_cast<double>(samples);
  auto frac = [&](long k) { return static_cast<double>(k) / n; };
  auto se = [&](double f) { return std::sqrt(std::max(f * (1.0 - f), 0.0) / n); };
  res.fractions = {frac(total.npt),  frac(total.npt3), frac(total.onpt3),
                   frac(total.onpt4), frac(total.npt5), frac(total.onpt5)};
  res.stderrs = {se(res.fractions.npt),  se(res.fractions.npt3),
                 se(res.fractions.onpt3), se(res.fractions.onpt4),
                 se(res.fractions.npt5),  se(res.fractions.onpt5)};
  return res;
}

std::vector<IsingSweepRow> ising_sweep(const IsingParams& params,
                                       const std::vector<double>& beta_grid,
                                       const Tolerances& tol) {
  const IsingSystem system(params);
  std::vector<IsingSweepRow> rows;
  rows.reserve(beta_grid.size());
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (double beta : beta_grid) {
    const CriterionReport r = evaluate_state(system.gibbs(beta, tol), 5, tol);
    IsingSweepRow row;
    row.inverse_temperature = beta;
    row.negativity = r.negativity;
    row.n3 = r.n3.value_or(0.0);
    row.n5 = r.n5.value_or(0.0);
    row.o3 = r.o3 ? *r.o3 : nan;
    row.o4 = r.o4 ? *r.o4 : nan;
    row.o5 = r.o5 ? *r.o5 : nan;
    rows.push_back(row);
  }
  return rows;
}

GapScan gap_scan(int grid_points) {
  if (grid_points < 100) throw ValidationError("gap scan: need at least 100 points");
  GapScan best;
  for (int i = 1; i <= grid_points; ++i) {
    const double p2 = static_cast<double>(i) / grid_points;
    const int d = std::max(2, static_cast<int>(std::ceil(1.0 / p2 - 1e-9)));
    const OptimalBounds b = p3_bounds(p2, d);
    const double gap = (b.p_min - p2 * p2) / (p2 * p2);
    if (gap > best.max_relative_gap) {
      best.max_relative_gap = gap;
      best.p2_star = p2;
    }
  }
  return best;
}

long long sample_complexity(const BudgetQuery& q) {
  if (q.n_qubits < 1) throw ValidationError("budget: need at least one qubit");
  if (q.moment_order < 2) throw ValidationError("budget: moment order must be >= 2");
  if (q.epsilon <= 0 || q.epsilon >= 1 || q.delta <= 0 || q.delta >= 1)
    throw ValidationError("budget: epsilon and delta must lie in (0, 1)");
  if (q.p2_estimate <= 0 || q.p2_estimate > 1)
    throw ValidationError("budget: p2 estimate must lie in (0, 1]");
  const double n = q.moment_order;
  const double m = n * n * std::ldexp(1.0, q.n_qubits) *
                   std::pow(q.p2_estimate, q.moment_order - 1) /
                   (q.epsilon * q.epsilon * q.delta);
  if (!(m < 9.0e18)) throw Error("budget: sample count overflows a 64-bit integer");
  return static_cast<long long>(std::ceil(m - 1e-9));
}

}  // namespace ptmom
