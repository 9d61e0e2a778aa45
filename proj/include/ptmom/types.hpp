#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ptmom {

// Centralized numerical tolerances.  All validation and criterion checks
// route through one instance of this record so that thresholds can be
// adjusted in a single place (e.g. from the command line).
struct Tolerances {
  double hermiticity = 1e-10;   // max allowed |M - M^dag| entrywise on ingestion
  double trace = 1e-10;         // |tr(rho) - 1|
  double state_psd = 1e-10;     // eigenvalue >= -state_psd counts as PSD for states
  double criterion_psd = 1e-9;  // eigenvalue >= -criterion_psd counts as PSD in criteria
  double detection = 1e-9;      // a violation must exceed this to count as detected
  double moment_match = 1e-8;   // witness spectra / realizations must reproduce moments this well
  double rank_rel = 1e-8;       // relative threshold for numerical rank decisions
  double feasibility = 1e-9;    // slack for moment feasibility interval tests
};

inline const Tolerances& default_tol() {
  static const Tolerances t{};
  return t;
}

// Error taxonomy.  ValidationError covers malformed inputs (bad dimensions,
// non-Hermitian data, broken invariants); the others mark well-formed inputs
// on which the requested operation is impossible.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ValidationError : Error {
  explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// A moment prefix incompatible with any state of the requested dimension.
// `order` names the first order at which the constraints fail.
struct InfeasibleError : Error {
  int order;
  InfeasibleError(int order_, const std::string& msg) : Error(msg), order(order_) {}
};

struct SingularHankelError : Error {
  explicit SingularHankelError(const std::string& msg) : Error(msg) {}
};

struct UnsupportedOrderError : Error {
  explicit UnsupportedOrderError(const std::string& msg) : Error(msg) {}
};

// Eigenvalue list of a Hermitian matrix, sorted descending.
struct Spectrum {
  Eigen::VectorXd values;

  int size() const { return static_cast<int>(values.size()); }
  double min() const { return values(values.size() - 1); }
  double max() const { return values(0); }
};

}  // namespace ptmom
