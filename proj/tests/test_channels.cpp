#include <doctest.h>

#include <numbers>

#include "qcorr/channels.hpp"
#include "qcorr/error.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/tolerances.hpp"

using namespace qcorr;

namespace {

void check_state(const DensityMatrix& rho) {
  CHECK(hermiticity_defect(rho.matrix()) <= tol::hermiticity);
  CHECK(std::abs(trace(rho.matrix()) - 1.0) <= tol::trace);
  CHECK(min_eigenvalue(rho.matrix()) >= -tol::psd_slack);
}

}  // namespace

TEST_CASE("Kraus completeness") {
  for (double p : {0.0, 0.3, 1.0}) {
    CHECK_NOTHROW(phase_damping_set(p));
    CHECK_NOTHROW(amplitude_decay_set(p));
  }
  CHECK_THROWS_AS(KrausSet({pauli::id(), pauli::x()}), ValidationError);
  CHECK_THROWS_AS(phase_damping_set(1.2), ValidationError);
  CHECK_THROWS_AS(amplitude_decay_set(-0.1), ValidationError);
}

TEST_CASE("phase damping scales c1, c2 by 1 - p") {
  Rng g(20);
  for (int k = 0; k < 200; ++k) {
    const BellDiagonal b = sample_bell_diagonal(g);
    const double p = uniform01(g);
    const auto set = phase_damping_set(p);
    const DensityMatrix out = apply_local_kraus(to_density(b), set, set);
    check_state(out);
    const BlochForm bl = to_bloch(out);
    CHECK(std::abs(bl.t(0, 0) - (1 - p) * b.c()[0]) < 1e-14);
    CHECK(std::abs(bl.t(1, 1) - (1 - p) * b.c()[1]) < 1e-14);
    CHECK(std::abs(bl.t(2, 2) - b.c()[2]) < 1e-14);
  }
  Rng h(21);
  for (int k = 0; k < 100; ++k) {
    const DensityMatrix rho = sample_dense_state(h);
    const auto set = phase_damping_set(0.4);
    const BlochForm a = to_bloch(rho), o = to_bloch(apply_local_kraus(rho, set, set));
    CHECK(std::abs(o.x[2] - a.x[2]) < 1e-14);
    const double q = std::sqrt(0.6);  // one qubit's coherence
    CHECK(std::abs(o.x[0] - q * a.x[0]) < 1e-14);
    CHECK(std::abs(o.t(2, 0) - q * a.t(2, 0)) < 1e-14);
    CHECK(std::abs(o.t(0, 1) - 0.6 * a.t(0, 1)) < 1e-14);
  }
}

TEST_CASE("amplitude decay moves population to the lower level") {
  const auto set = amplitude_decay_set(0.0);
  const DensityMatrix out = apply_local_kraus(to_density(werner(0.3)), set, set);
  CHECK(std::abs(out.matrix()(3, 3).real() - 1.0) < 1e-14);
  Rng g(22);
  for (int k = 0; k < 100; ++k) {
    const auto s = amplitude_decay_set(uniform01(g));
    check_state(apply_local_kraus(sample_dense_state(g), s, s));
  }
}

TEST_CASE("non-Markovian kernel and its zeros") {
  for (double lam : {1e-4, 1e-3, 1e-1}) {
    const NonMarkovParams prm{lam, 1.0};
    CHECK(p_kernel(0.0, prm) == doctest::Approx(1.0));
    const auto z = pt_zeros(prm, 4);
    REQUIRE(z.size() == 4);
    for (std::size_t n = 0; n < z.size(); ++n) {
      CHECK(p_kernel(z[n], prm) < 1e-20);
      if (n) CHECK(z[n] > z[n - 1]);
      // kernel touches zero without changing sign
      CHECK(p_kernel(z[n] * (1 - 1e-6), prm) > 0);
      CHECK(p_kernel(z[n] * (1 + 1e-6), prm) > 0);
    }
    CHECK(z[1] - z[0] == doctest::Approx(2 * std::numbers::pi / prm.d()));
  }
  CHECK_THROWS_AS((NonMarkovParams{2.5, 1.0}.validate()), ValidationError);
  CHECK_THROWS_AS((NonMarkovParams{0.0, 1.0}.validate()), ValidationError);
}

TEST_CASE("random field: unitality, periodicity and weight flow") {
  const DensityMatrix mixed{0.25 * CMat4::identity()};
  for (double gt : {0.1, 0.7, 2.0})
    CHECK(max_abs_diff(random_field_apply(mixed, gt).matrix(), mixed.matrix()) < 1e-15);
  for (double gt : {0.2, 0.9, 1.3}) {
    CHECK(random_field_f(gt + std::numbers::pi / 2) == doctest::Approx(random_field_f(gt)));
    CHECK(random_field_f(gt) >= 0.0);
    CHECK(random_field_f(gt) <= 0.5);
  }
  CHECK_THROWS_AS(random_field_unitary(1.0, 0.3), ValidationError);
  const auto u = random_field_unitary(std::numbers::pi, 0.3);
  CHECK(max_abs_diff(u * adjoint(u), CMat2::identity()) < 1e-15);

  Rng g(23);
  for (int k = 0; k < 200; ++k) {
    const BellDiagonal b = sample_bell_diagonal(g);
    const double gt = 2 * std::numbers::pi * uniform01(g);
    const BellEigenvalues l0 = b.eigenvalues();
    const BellEigenvalues l1 = random_field_bell_update(l0, random_field_f(gt));
    CHECK(std::abs((l1.psi_plus + l1.phi_minus) - (l0.psi_plus + l0.phi_minus)) < 1e-15);
    CHECK(std::abs((l1.psi_minus + l1.phi_plus) - (l0.psi_minus + l0.phi_plus)) < 1e-15);
    const DensityMatrix dense = random_field_apply(to_density(b), gt);
    check_state(dense);
    CHECK(max_abs_diff(dense.matrix(), to_density(BellDiagonal::from_eigenvalues(l1)).matrix()) < 1e-14);
  }
  CHECK_THROWS_AS(random_field_bell_update(BellEigenvalues{}, 0.7), ValidationError);
}
