// Command-line front end: analyze a state file, run random-state surveys,
// sweep Ising thermal states, evaluate sharp moment bounds, size measurement
// budgets, classify raw moment sequences, and emit the padded-Werner
// counterexample state.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ptmom/io.hpp"
#include "ptmom/linalg.hpp"
#include "ptmom/moment_problem.hpp"
#include "ptmom/moments.hpp"
#include "ptmom/optimal_bounds.hpp"
#include "ptmom/states.hpp"
#include "ptmom/survey.hpp"
#include "ptmom/types.hpp"

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content;
  else
    ptmom::write_text_file(out_path, content);
}

std::vector<double> parse_reals(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    size_t used = 0;
    double v;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw ptmom::ParseError("not a number: '" + tok + "'");
    }
    while (used < tok.size() && std::isspace(static_cast<unsigned char>(tok[used])))
      ++used;
    if (used != tok.size())
      throw ptmom::ParseError("not a number: '" + tok + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ptmom::ParseError("empty number list");
  return out;
}

std::vector<int> parse_ints(const std::string& csv) {
  std::vector<int> out;
  for (double v : parse_reals(csv)) {
    const int i = static_cast<int>(v);
    if (v != i) throw ptmom::ParseError("expected integers");
    out.push_back(i);
  }
  return out;
}

std::string describe_bounds(const ptmom::OptimalBounds& b) {
  std::ostringstream os;
  os << "order " << b.order << "\n";
  os << "p_min = " << fmt(b.p_min) << "\n";
  os << "p_max = " << fmt(b.p_max) << "\n";
  auto spectrum = [&](const char* name, const Eigen::VectorXd& s) {
    os << name << " =";
    for (long i = 0; i < s.size(); ++i) os << ' ' << fmt(s(i));
    os << "\n";
  };
  spectrum("spectrum_min", b.spectrum_min);
  spectrum("spectrum_max", b.spectrum_max);
  auto mult = [&](const char* name, const std::optional<int>& v) {
    if (v) os << name << " = " << *v << "\n";
  };
  mult("alpha", b.mult.alpha);
  mult("beta", b.mult.beta);
  mult("gamma", b.mult.gamma);
  mult("kappa", b.mult.kappa);
  mult("eta", b.mult.eta);
  mult("xi", b.mult.xi);
  return os.str();
}

int run(int argc, char** argv) {
  CLI::App app{"PT-moment entanglement certification toolkit"};
  app.require_subcommand(1);
  ptmom::Tolerances tol = ptmom::default_tol();
  double detection_tol = tol.detection;
  app.add_option("--tol", detection_tol, "detection threshold for criteria");

  // ---- analyze ----
  auto* analyze = app.add_subcommand("analyze", "criterion report for a state file");
  std::string state_path, out_path;
  int order = 5;
  analyze->add_option("state", state_path, "state JSON file")->required();
  analyze->add_option("--order", order, "highest moment order (3..5)")
      ->check(CLI::Range(3, 5));
  analyze->add_option("--out", out_path, "output path (default stdout)");

  // ---- survey ----
  auto* survey = app.add_subcommand("survey", "Hilbert-Schmidt random-state survey");
  int dim = 2;
  long samples = 1000;
  uint64_t seed = 1;
  std::string criteria_csv;
  survey->add_option("--dim", dim, "local dimension D")->required();
  survey->add_option("--samples", samples, "number of samples");
  survey->add_option("--seed", seed, "root seed");
  survey->add_option("--criteria", criteria_csv,
                     "comma list among npt,npt3,onpt3,onpt4,npt5,onpt5 (default all)");
  survey->add_option("--out", out_path, "CSV output path (default stdout)");

  // ---- ising ----
  auto* ising = app.add_subcommand("ising", "criteria along an Ising temperature sweep");
  int sites = 8;
  double coupling = 1.0, field = 2.5;
  std::string cut_csv = "", betas_csv = "";
  ising->add_option("--sites", sites, "chain length N");
  ising->add_option("--coupling", coupling, "J");
  ising->add_option("--field", field, "transverse field ratio g");
  ising->add_option("--cut", cut_csv, "comma list of A sites (default first half)");
  ising->add_option("--betas", betas_csv, "comma list of inverse temperatures")
      ->required();
  ising->add_option("--out", out_path, "CSV output path (default stdout)");

  // ---- bounds ----
  auto* bounds = app.add_subcommand("bounds", "sharp moment bounds from a prefix");
  double p2 = 0.5;
  std::optional<double> p3, p4;
  int bdim = 2, border = 3;
  bounds->add_option("--p2", p2, "second moment")->required();
  bounds->add_option("--p3", p3, "third moment (needed for order >= 4)");
  bounds->add_option("--p4", p4, "fourth moment (needed for order 5)");
  bounds->add_option("--dim", bdim, "spectrum dimension d")->required();
  bounds->add_option("--order", border, "bound order n (3..5)")->check(CLI::Range(3, 5));

  // ---- budget ----
  auto* budget = app.add_subcommand("budget", "measurement budget for moment estimation");
  ptmom::BudgetQuery q;
  budget->add_option("--qubits", q.n_qubits, "total qubit count N")->required();
  budget->add_option("--order", q.moment_order, "moment order n")->required();
  budget->add_option("--p2", q.p2_estimate, "purity scale of the target state");
  budget->add_option("--epsilon", q.epsilon, "relative accuracy");
  budget->add_option("--delta", q.delta, "failure probability");

  // ---- moments-check ----
  auto* mcheck = app.add_subcommand("moments-check",
                                    "membership and realizability of a raw sequence");
  std::string moments_csv;
  bool stieltjes = false;
  mcheck->add_option("moments", moments_csv, "comma list m_0,m_1,...,m_n")->required();
  mcheck->add_flag("--stieltjes", stieltjes, "require a PSD representing matrix");

  // ---- counterexample ----
  auto* cex = app.add_subcommand("counterexample",
                                 "NPT state passing the third-moment criterion");
  ptmom::CounterexampleParams cpar;
  std::optional<double> noise_weight;
  std::optional<int> noise_blocks;
  cex->add_option("--base-dim", cpar.base_dim, "Werner local dimension d1");
  cex->add_option("--noise-weight", noise_weight, "noise eigenvalue lambda");
  cex->add_option("--noise-blocks", noise_blocks, "number of noise blocks");
  cex->add_option("--out", out_path, "state JSON output path")->required();

  CLI11_PARSE(app, argc, argv);
  tol.detection = detection_tol;

  if (*analyze) {
    const ptmom::BipartiteState s = ptmom::read_state_file(state_path, tol);
    const ptmom::CriterionReport r = ptmom::evaluate_state(s, order, tol);
    const ptmom::Spectrum spec =
        ptmom::eigenvalues_hermitian(ptmom::partial_transpose(s), tol);
    const ptmom::MomentVector p = ptmom::moments_of_spectrum(spec, order);
    emit(out_path, ptmom::report_to_json(r, p, spec));
  } else if (*survey) {
    ptmom::SurveyCriteria crit;
    if (!criteria_csv.empty()) {
      crit = ptmom::SurveyCriteria{false, false, false, false, false, false};
      std::stringstream ss(criteria_csv);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        if (tok == "npt") crit.npt = true;
        else if (tok == "npt3") crit.npt3 = true;
        else if (tok == "onpt3") crit.onpt3 = true;
        else if (tok == "onpt4") crit.onpt4 = true;
        else if (tok == "npt5") crit.npt5 = true;
        else if (tok == "onpt5") crit.onpt5 = true;
        else throw ptmom::ParseError("unknown criterion: " + tok);
      }
    }
    const ptmom::SurveyResult res = ptmom::run_survey(dim, samples, seed, crit, tol);
    emit(out_path, ptmom::survey_csv({res}));
  } else if (*ising) {
    ptmom::IsingParams par;
    par.n_qubits = sites;
    par.coupling = coupling;
    par.field_ratio = field;
    if (cut_csv.empty()) {
      for (int i = 0; i < sites / 2; ++i) par.cut.push_back(i);
      if (par.cut.empty()) par.cut.push_back(0);
    } else {
      par.cut = parse_ints(cut_csv);
    }
    const std::vector<double> betas = parse_reals(betas_csv);
    emit(out_path, ptmom::ising_csv(ptmom::ising_sweep(par, betas, tol)));
  } else if (*bounds) {
    ptmom::OptimalBounds b;
    if (border == 3) {
      b = ptmom::p3_bounds(p2, bdim, tol);
    } else {
      if (!p3) throw ptmom::ParseError("order >= 4 needs --p3");
      std::vector<double> vals{static_cast<double>(bdim), 1.0, p2, *p3};
      if (border == 5) {
        if (!p4) throw ptmom::ParseError("order 5 needs --p4");
        vals.push_back(*p4);
        b = ptmom::p5_bounds(ptmom::MomentVector{vals}, tol);
      } else {
        b = ptmom::p4_bounds(ptmom::MomentVector{vals}, tol);
      }
    }
    std::cout << describe_bounds(b);
  } else if (*budget) {
    std::cout << ptmom::sample_complexity(q) << "\n";
  } else if (*mcheck) {
    const ptmom::MomentVector m{parse_reals(moments_csv)};
    if (m.order() < 1) throw ptmom::ParseError("need at least m_0 and m_1");
    const int n = m.order();
    std::ostringstream os;
    const bool in_cl = stieltjes ? ptmom::membership_Mn_plus(m, tol)
                                 : ptmom::membership_Mn(m, tol);
    os << "in cl(M_" << n << (stieltjes ? "+" : "") << "): " << (in_cl ? "yes" : "no");
    std::string how;
    bool realizable = false;
    try {
      ptmom::realize_moments(m, stieltjes, tol);
      realizable = true;
    } catch (const ptmom::SingularHankelError& e) {
      how = std::string(" (") + e.what() + ")";
    } catch (const ptmom::Error& e) {
      how = std::string(" (") + e.what() + ")";
    }
    os << "; " << (stieltjes ? "PSD-realizable: " : "exactly realizable: ")
       << (realizable ? "yes" : "no") << how << "\n";
    std::cout << os.str();
  } else if (*cex) {
    cpar.noise_weight = noise_weight;
    cpar.noise_blocks = noise_blocks;
    const ptmom::Counterexample c = ptmom::build_counterexample(cpar, tol);
    ptmom::write_state_file(out_path, c.state);
    std::cout << "dim " << c.state.dim_a() << "x" << c.state.dim_b() << ", noise blocks "
              << c.noise_blocks << ", noise weight " << fmt(c.noise_weight)
              << ", block trace " << fmt(c.trace_factor) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ptmom::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ptmom::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ptmom::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
