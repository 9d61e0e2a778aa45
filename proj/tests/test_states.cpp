#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "ptmom/linalg.hpp"
#include "ptmom/moments.hpp"
#include "ptmom/rng.hpp"
#include "ptmom/states.hpp"

using namespace ptmom;
using Eigen::MatrixXcd;
using Eigen::VectorXd;

TEST_CASE("counter-based generator reproduces the published test vectors") {
  using A4 = std::array<uint32_t, 4>;
  using A2 = std::array<uint32_t, 2>;
  CHECK(PhiloxRng::keyed_block(A4{0, 0, 0, 0}, A2{0, 0}) ==
        A4{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  CHECK(PhiloxRng::keyed_block(A4{0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                               A2{0xffffffffu, 0xffffffffu}) ==
        A4{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  CHECK(PhiloxRng::keyed_block(A4{0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                               A2{0xa4093822u, 0x299f31d0u}) ==
        A4{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("generator streams are deterministic and independent") {
  PhiloxRng a(7, 3), b(7, 3), c(7, 4);
  bool all_equal = true, any_diff = false;
  for (int i = 0; i < 64; ++i) {
    const uint32_t va = a.next_u32();
    all_equal = all_equal && (va == b.next_u32());
    any_diff = any_diff || (va != c.next_u32());
  }
  CHECK(all_equal);
  CHECK(any_diff);

  PhiloxRng u(123);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    CHECK(x > 0.0);
    CHECK(x <= 1.0);
  }
}

TEST_CASE("random states are reproducible and valid") {
  const BipartiteState a = sample_hs(2, 3, 99, 5);
  const BipartiteState b = sample_hs(2, 3, 99, 5);
  CHECK((a.matrix() - b.matrix()).cwiseAbs().maxCoeff() == 0.0);

  const BipartiteState c = sample_hs(2, 3, 99, 6);
  CHECK((a.matrix() - c.matrix()).cwiseAbs().maxCoeff() > 1e-3);

  CHECK(a.dim() == 6);
  CHECK(std::abs(a.matrix().trace().real() - 1.0) < 1e-12);
  CHECK(min_eigenvalue(a.matrix()) > -1e-12);
  CHECK_THROWS_AS(sample_hs(1, 2, 0), ValidationError);
}

TEST_CASE("Bell state landmarks") {
  const BipartiteState s = bell_state();
  CHECK(s.matrix()(0, 3).real() == doctest::Approx(0.5));
  const Spectrum pt = eigenvalues_hermitian(partial_transpose(s));
  CHECK(pt.values(0) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(pt.values(3) == doctest::Approx(-0.5).epsilon(1e-13));
  CHECK((trace_norm(partial_transpose(s)) - 1.0) / 2.0 ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("Werner extreme PT eigenvalues") {
  for (int d1 : {2, 3, 4}) {
    const BipartiteState w = werner(d1);
    CHECK(w.dim() == d1 * d1);
    const Spectrum pt = eigenvalues_hermitian(partial_transpose(w));
    const double expected = -(d1 - 2.0) / (d1 * (d1 - 1.0));
    CHECK(pt.max() + pt.min() == doctest::Approx(expected).epsilon(1e-12));
    CHECK(pt.min() < 0.0);  // NPT for every local dimension
  }
}

TEST_CASE("diagonal product states are their own partial transpose") {
  VectorXd w(3);
  w << 0.5, 0.3, 0.2;
  const BipartiteState s = product_state(w, 2, 2);
  CHECK((partial_transpose(s) - s.matrix()).cwiseAbs().maxCoeff() == 0.0);
  const MomentVector p = pt_moments(s, 4);
  const MomentVector q = moments_of_spectrum(std::vector<double>{0.5, 0.3, 0.2, 0.0}, 4);
  for (int k = 0; k <= 4; ++k) CHECK(p[k] == doctest::Approx(q[k]).epsilon(1e-12));

  VectorXd bad(2);
  bad << 0.5, 0.4;
  CHECK_THROWS_AS(product_state(bad, 2, 2), ValidationError);
  bad << 1.2, -0.2;
  CHECK_THROWS_AS(product_state(bad, 2, 2), ValidationError);
  VectorXd many = VectorXd::Constant(5, 0.2);
  CHECK_THROWS_AS(product_state(many, 2, 2), ValidationError);
}

TEST_CASE("two-site chain has the closed-form spectrum") {
  const double g = 0.7;
  IsingParams p;
  p.n_qubits = 2;
  p.coupling = 1.0;
  p.field_ratio = g;
  const IsingSystem sys(p);
  const VectorXd& e = sys.energies();
  REQUIRE(e.size() == 4);
  const double top = 2.0 * std::sqrt(1.0 + g * g);
  CHECK(e(0) == doctest::Approx(-top).epsilon(1e-12));
  CHECK(e(1) == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(e(2) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(e(3) == doctest::Approx(top).epsilon(1e-12));
}

TEST_CASE("Gibbs states interpolate between mixed and ground") {
  IsingParams p;
  p.n_qubits = 3;
  p.field_ratio = 1.3;
  p.cut = {0};
  const IsingSystem sys(p);

  const BipartiteState hot = sys.gibbs(0.0);
  CHECK((hot.matrix() - MatrixXcd::Identity(8, 8) / 8.0).cwiseAbs().maxCoeff() < 1e-13);

  const BipartiteState cold = sys.gibbs(60.0);
  CHECK(purity(cold) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(pt_moments(cold, 2)[2] > pt_moments(sys.gibbs(1.0), 2)[2]);
}

TEST_CASE("the cut relabels the composite basis") {
  IsingParams p;
  p.n_qubits = 3;
  p.cut = {1, 2};
  const BipartiteState s = ising_gibbs(p);
  CHECK(s.dim_a() == 4);
  CHECK(s.dim_b() == 2);
  // the ring is site-symmetric, so moments are cut-position independent
  IsingParams q = p;
  q.cut = {0, 1};
  const MomentVector ps = pt_moments(ising_gibbs({3, 1.0, 1.0, 0.8, {1, 2}}), 3);
  const MomentVector qs = pt_moments(ising_gibbs({3, 1.0, 1.0, 0.8, {0, 1}}), 3);
  for (int k = 2; k <= 3; ++k) CHECK(ps[k] == doctest::Approx(qs[k]).epsilon(1e-10));

  CHECK_THROWS_AS(ising_gibbs({2, 1, 1, 0, {}}), ValidationError);
  CHECK_THROWS_AS(ising_gibbs({2, 1, 1, 0, {0, 1}}), ValidationError);
  CHECK_THROWS_AS(ising_gibbs({2, 1, 1, 0, {2}}), ValidationError);
  CHECK_THROWS_AS(ising_gibbs({2, 1, 1, 0, {0, 0}}), ValidationError);
  CHECK_THROWS_AS(ising_gibbs({13, 1, 1, 0, {0}}), ValidationError);
  CHECK_THROWS_AS(ising_gibbs({1, 1, 1, 0, {0}}), ValidationError);
  IsingParams neg;
  neg.n_qubits = 2;
  neg.inverse_temperature = -1.0;
  CHECK_THROWS_AS(ising_gibbs(neg), ValidationError);
}

TEST_CASE("padded Werner construction matches its design values") {
  const Counterexample c = build_counterexample();
  CHECK(c.base_dim == 3);
  CHECK(c.noise_blocks == 193);
  CHECK(c.noise_weight == doctest::Approx(1.0 / 12).epsilon(1e-15));
  CHECK(c.trace_factor == doctest::Approx(49.25).epsilon(1e-14));
  CHECK(c.state.dim_a() == 23);
  CHECK(c.state.dim_b() == 23);

  const MomentVector p = pt_moments(c.state, 3);
  const double t = 49.25;
  const double p2_expect = (201.0 / 36 + 193.0 / 144 + 1.0 / 9) / (t * t);
  const double p3_expect = (201.0 / 216 + 193.0 / 1728 - 1.0 / 27) / (t * t * t);
  CHECK(p[2] == doctest::Approx(p2_expect).epsilon(1e-10));
  CHECK(p[3] == doctest::Approx(p3_expect).epsilon(1e-9));
  // the whole point: third-moment consistency despite a negative eigenvalue
  CHECK(p[3] - p[2] * p[2] > 0.0);
  CHECK(p[3] - p[2] * p[2] < 1e-8);

  const Spectrum pt = eigenvalues_hermitian(partial_transpose(c.state));
  CHECK(pt.min() == doctest::Approx(-1.0 / 3 / t).epsilon(1e-10));
  CHECK(pt.max() == doctest::Approx(1.0 / 6 / t).epsilon(1e-10));
  CHECK(pt.max() + pt.min() < 0.0);
}

TEST_CASE("small noise configurations stay valid") {
  CounterexampleParams p;
  p.noise_blocks = 5;
  const Counterexample c = build_counterexample(p);
  CHECK(c.noise_blocks == 5);
  CHECK(c.trace_factor == doctest::Approx(1.0 + 3.0 * 5 / 12.0).epsilon(1e-14));
  CHECK(c.state.dim_a() == 7);  // 3 + ceil(sqrt(10))
  CHECK(std::abs(c.state.matrix().trace().real() - 1.0) < 1e-12);
  CHECK(min_eigenvalue(c.state.matrix()) > -1e-12);

  CounterexampleParams bad;
  bad.noise_weight = 0.2;  // above half the top PT eigenvalue
  CHECK_THROWS_AS(build_counterexample(bad), ValidationError);
  bad.noise_weight = -0.1;
  CHECK_THROWS_AS(build_counterexample(bad), ValidationError);
  CounterexampleParams dim;
  dim.base_dim = 2;
  CHECK_THROWS_AS(build_counterexample(dim), ValidationError);
  CounterexampleParams nb;
  nb.noise_blocks = 0;
  CHECK_THROWS_AS(build_counterexample(nb), ValidationError);
}
