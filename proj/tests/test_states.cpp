#include <doctest.h>

#include "oracles.hpp"
#include "qcorr/error.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/states.hpp"
#include "qcorr/tolerances.hpp"

using namespace qcorr;

TEST_CASE("Bell weights and correlations round trip") {
  Rng g(1);
  for (int k = 0; k < 200; ++k) {
    const BellDiagonal b = sample_bell_diagonal(g);
    const BellEigenvalues l = b.eigenvalues();
    CHECK(l.sum() == doctest::Approx(1.0).epsilon(1e-14));
    for (double w : l.as_array()) CHECK(w >= -1e-15);
    const auto c = correlations_from_eigenvalues(l);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(c[i] - b.c()[i]) < 1e-14);
  }
}

TEST_CASE("Bell-diagonal matrix equals explicit projector mixture") {
  Rng g(2);
  for (int k = 0; k < 100; ++k) {
    const BellDiagonal b = sample_bell_diagonal(g);
    const auto rho = to_density(b);
    CHECK(oracle::max_diff(oracle::bell_mixture(b.eigenvalues().as_array()), rho.matrix()) < 1e-15);
    const auto ob = oracle::bloch(rho.matrix());
    for (int i = 0; i < 3; ++i) {
      CHECK(std::abs(ob.x[i]) < 1e-15);
      CHECK(std::abs(ob.t[i][i] - b.c()[i]) < 1e-14);
    }
  }
}

TEST_CASE("single Bell states carry the expected correlations") {
  CHECK(correlations_from_eigenvalues({1, 0, 0, 0}) == CorrelationTriple{-1, -1, -1});
  CHECK(correlations_from_eigenvalues({0, 1, 0, 0}) == CorrelationTriple{-1, 1, 1});
  CHECK(correlations_from_eigenvalues({0, 0, 1, 0}) == CorrelationTriple{1, -1, 1});
  CHECK(correlations_from_eigenvalues({0, 0, 0, 1}) == CorrelationTriple{1, 1, -1});
}

TEST_CASE("Bloch round trip on dense states") {
  Rng g(3);
  for (int k = 0; k < 100; ++k) {
    const DensityMatrix rho = sample_dense_state(g);
    const BlochForm b = to_bloch(rho);
    const auto ob = oracle::bloch(rho.matrix());
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(std::abs(b.x[i] - ob.x[i]) < 1e-14);
      CHECK(std::abs(b.y[i] - ob.y[i]) < 1e-14);
      for (std::size_t j = 0; j < 3; ++j) CHECK(std::abs(b.t(i, j) - ob.t[i][j]) < 1e-14);
    }
    CHECK(max_abs_diff(from_bloch(b).matrix(), rho.matrix()) < 1e-15);
  }
}

TEST_CASE("DensityMatrix validation") {
  CMat4 m = CMat4::identity();
  CHECK_THROWS_AS(DensityMatrix{m}, ValidationError);  // trace 4
  m = 0.25 * CMat4::identity();
  CHECK_NOTHROW(DensityMatrix{m});
  CMat4 h = m;
  h(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix{h}, ValidationError);  // not Hermitian
  CMat4 n = m;
  n(0, 3) = n(3, 0) = 0.4;
  try {
    DensityMatrix bad{n};
    FAIL("accepted a negative eigenvalue");
  } catch (const UnphysicalStateError& e) {
    CHECK(e.min_eigenvalue() == doctest::Approx(-0.15));
  }
  CMat4 f = m;
  f(1, 1) = std::nan("");
  CHECK_THROWS_AS(DensityMatrix{f}, ValidationError);
}

TEST_CASE("unphysical correlation triples are rejected") {
  CHECK_THROWS_AS(BellDiagonal({1, 1, 1}), ValidationError);
  const auto rep = is_physical_bell({1, 1, 1});
  CHECK_FALSE(rep.physical);
  CHECK(rep.violated.size() == 1);
  CHECK(is_physical_bell({-1, -1, -1}).physical);
}

TEST_CASE("physical Bell triples satisfy the geometric constraints") {
  Rng g(4);
  std::uniform_real_distribution<double> u(-1, 1);
  int physical = 0;
  for (int k = 0; k < 20000; ++k) {
    const CorrelationTriple c{u(g), u(g), u(g)};
    if (!is_physical_bell(c).physical) continue;
    ++physical;
    CHECK(geometric_constraints_hold(c, 0.0));
  }
  CHECK(physical > 3000);  // tetrahedron is 1/3 of the cube
}

TEST_CASE("EWL Bloch data") {
  for (double r : {0.0, 0.3, 1.0})
    for (double a2 : {0.1, 0.5, 0.9}) {
      const double a = std::sqrt(a2), b = std::sqrt(1 - a2);
      const XBloch phi = x_state_bloch(ewl({EwlKind::Phi, r, a}));
      CHECK(phi.c1 == doctest::Approx(2 * a * b * r));
      CHECK(phi.c2 == doctest::Approx(2 * a * b * r));
      CHECK(phi.c3 == doctest::Approx(-r));
      CHECK(phi.m == doctest::Approx((b * b - a * a) * r));
      CHECK(phi.n == doctest::Approx(-phi.m));
      const XBloch psi = x_state_bloch(ewl({EwlKind::Psi, r, a}));
      CHECK(psi.c1 == doctest::Approx(2 * a * b * r));
      CHECK(psi.c2 == doctest::Approx(-2 * a * b * r));
      CHECK(psi.c3 == doctest::Approx(r));
      CHECK(psi.n == doctest::Approx(psi.m));

      const auto rho = to_density(ewl({EwlKind::Phi, r, a}));
      const auto ob = oracle::bloch(rho.matrix());
      CHECK(ob.x[2] == doctest::Approx(phi.m));
      CHECK(ob.y[2] == doctest::Approx(phi.n));
      CHECK(ob.t[0][0] == doctest::Approx(phi.c1));
    }
  CHECK_THROWS_AS(ewl({EwlKind::Phi, 1.5, 0.5}), ValidationError);
}

TEST_CASE("X-state recognition") {
  const auto x = ewl({EwlKind::Psi, 0.7, 0.4});
  const auto back = try_x_state(x_matrix(x));
  REQUIRE(back.has_value());
  CHECK(back->o14 == doctest::Approx(x.o14));
  Rng g(5);
  CHECK_FALSE(try_x_state(sample_dense_state(g).matrix()).has_value());
  const BellDiagonal b({0.2, -0.4, 0.1});
  CHECK(max_abs_diff(x_matrix(as_x_state(b)), to_density(b).matrix()) < 1e-15);
}

TEST_CASE("named families") {
  const auto w = werner(0.6);
  CHECK(w.c() == CorrelationTriple{-0.6, -0.6, -0.6});
  CHECK(w.eigenvalues().psi_minus == doctest::Approx(0.25 + 0.75 * 0.6));
  for (double c3 : {-1.0, -0.3, 0.0, 0.8, 1.0}) {
    for (auto br : {Rank2Branch::Plus, Rank2Branch::Minus}) {
      const auto l = rank2_bell(c3, br).eigenvalues().as_array();
      int zeros = 0;
      for (double v : l) zeros += std::abs(v) < 1e-15;
      CHECK(zeros >= 2);
    }
  }
  const auto p = pure_schmidt(0.3);
  CHECK(p.purity() == doctest::Approx(1.0));
}

TEST_CASE("seeded sampling is reproducible") {
  for (std::uint64_t s : {0ull, 1ull, 12345ull}) CHECK(sample_bell_diagonal(s).c() == sample_bell_diagonal(s).c());
  CHECK(mix_seed(1, 2) != mix_seed(2, 1));
  Rng a(42), b(42);
  CHECK(max_abs_diff(sample_dense_state(a).matrix(), sample_dense_state(b).matrix()) == 0.0);
}

TEST_CASE("local unitaries preserve the spectrum and are unitary") {
  Rng g(6);
  for (int k = 0; k < 50; ++k) {
    const CMat2 u = sample_unitary2(g);
    CHECK(max_abs_diff(u * adjoint(u), CMat2::identity()) < 1e-14);
    const DensityMatrix rho = sample_dense_state(g);
    const DensityMatrix out = apply_local_unitary(rho, u, sample_unitary2(g));
    const auto e1 = eigh(rho.matrix()).values, e2 = eigh(out.matrix()).values;
    for (int i = 0; i < 4; ++i) CHECK(std::abs(e1[i] - e2[i]) < 1e-12);
  }
}
