#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qcorr/error.hpp"
#include "qcorr/numerics.hpp"

using namespace qcorr;

namespace {

CMat2 random_c2(std::mt19937_64& g) {
  std::normal_distribution<double> n;
  CMat2 m;
  for (auto& z : m.m) z = {n(g), n(g)};
  return m;
}

Mat3 random_sym(std::mt19937_64& g) {
  std::normal_distribution<double> n;
  Mat3 a;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i; j < 3; ++j) a(i, j) = a(j, i) = n(g);
  return a;
}

oracle::M3 to_m3(const Mat3& a) {
  oracle::M3 o{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) o[i][j] = a(i, j);
  return o;
}

// Rotation from Euler angles.
Mat3 rotation(double a, double b, double c) {
  auto rz = [](double t) {
    Mat3 r = Mat3::identity();
    r(0, 0) = r(1, 1) = std::cos(t);
    r(0, 1) = -std::sin(t);
    r(1, 0) = std::sin(t);
    return r;
  };
  Mat3 ry = Mat3::identity();
  ry(0, 0) = ry(2, 2) = std::cos(b);
  ry(0, 2) = std::sin(b);
  ry(2, 0) = -std::sin(b);
  return rz(a) * ry * rz(c);
}

}  // namespace

TEST_CASE("kron22 matches entrywise expansion") {
  std::mt19937_64 g(7);
  for (int k = 0; k < 50; ++k) {
    const CMat2 a = random_c2(g), b = random_c2(g);
    oracle::C2 oa, ob;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        oa[i][j] = a(i, j);
        ob[i][j] = b(i, j);
      }
    CHECK(oracle::max_diff(oracle::kron(oa, ob), kron22(a, b)) == 0.0);
  }
}

TEST_CASE("pauli products") {
  const cplx I{0, 1};
  CHECK(max_abs_diff(pauli::x() * pauli::y(), I * pauli::z()) == 0.0);
  CHECK(max_abs_diff(pauli::y() * pauli::z(), I * pauli::x()) == 0.0);
  CHECK(max_abs_diff(pauli::z() * pauli::x(), I * pauli::y()) == 0.0);
  for (std::size_t i = 0; i < 3; ++i) CHECK(max_abs_diff(pauli::sigma(i) * pauli::sigma(i), pauli::id()) == 0.0);
}

TEST_CASE("eig_sym3 against characteristic-polynomial bisection") {
  std::mt19937_64 g(11);
  for (int k = 0; k < 500; ++k) {
    const Mat3 a = random_sym(g);
    const auto got = eig_sym3(a);
    const auto ref = oracle::eig3(to_m3(a));
    for (int i = 0; i < 3; ++i) CHECK(got[i] == doctest::Approx(ref[i]).epsilon(1e-10));
    CHECK(got[0] >= got[1]);
    CHECK(got[1] >= got[2]);
  }
}

TEST_CASE("eig_sym3 degenerate spectra") {
  auto check = [](const Mat3& a, std::array<double, 3> want) {
    const auto got = eig_sym3(a);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(got[i] - want[i]) < 1e-12);
  };
  check(Mat3::identity(), {1, 1, 1});
  check(Mat3::diag(2, 1, 1), {2, 1, 1});
  check(Mat3::diag(0, 0, 0), {0, 0, 0});
  const Mat3 r = rotation(0.3, 1.1, -0.7);
  check(r * Mat3::diag(1, 1, 3) * transpose(r), {3, 1, 1});
  check(r * Mat3::diag(1, 1 + 1e-9, 1) * transpose(r), {1 + 1e-9, 1, 1});
  check(outer(Vec3{{1, 2, 2}}, Vec3{{1, 2, 2}}), {9, 0, 0});
}

TEST_CASE("eig_sym3 invariants: rotation, trace, determinant") {
  std::mt19937_64 g(3);
  std::uniform_real_distribution<double> ang(-3, 3);
  for (int k = 0; k < 200; ++k) {
    const Mat3 a = random_sym(g);
    const auto e = eig_sym3(a);
    CHECK(e[0] + e[1] + e[2] == doctest::Approx(trace(a)).epsilon(1e-12));
    CHECK(e[0] * e[1] * e[2] == doctest::Approx(det(a)).epsilon(1e-9));
    const Mat3 r = rotation(ang(g), ang(g), ang(g));
    const auto er = eig_sym3(r * a * transpose(r));
    for (int i = 0; i < 3; ++i) CHECK(std::abs(er[i] - e[i]) < 1e-12 * (1 + std::abs(e[0])) * 10);
  }
}

TEST_CASE("eig_sym3 rejects bad input") {
  Mat3 a = Mat3::identity();
  a(0, 1) = 0.5;
  CHECK_THROWS_AS(eig_sym3(a), ValidationError);
  Mat3 b = Mat3::identity();
  b(2, 2) = std::nan("");
  CHECK_THROWS_AS(eig_sym3(b), ValidationError);
}

TEST_CASE("jacobi agrees with the closed form") {
  std::mt19937_64 g(5);
  for (int k = 0; k < 100; ++k) {
    const Mat3 a = random_sym(g);
    const auto e1 = eig_sym3(a), e2 = eig_sym3_jacobi(a);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(e1[i] - e2[i]) < 1e-11);
  }
}

TEST_CASE("eigh on Hermitian 4x4") {
  std::mt19937_64 g(9);
  std::normal_distribution<double> n;
  for (int k = 0; k < 100; ++k) {
    CMat4 a;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i; j < 4; ++j) {
        a(i, j) = i == j ? cplx{n(g), 0} : cplx{n(g), n(g)};
        a(j, i) = std::conj(a(i, j));
      }
    const auto e = eigh(a);
    for (std::size_t c = 0; c < 4; ++c) {
      if (c) CHECK(e.values[c - 1] <= e.values[c]);
      double res = 0, nrm = 0;
      for (std::size_t i = 0; i < 4; ++i) {
        cplx s = 0;
        for (std::size_t j = 0; j < 4; ++j) s += a(i, j) * e.vectors(j, c);
        res = std::max(res, std::abs(s - e.values[c] * e.vectors(i, c)));
        nrm += std::norm(e.vectors(i, c));
      }
      CHECK(res < 1e-10);
      CHECK(nrm == doctest::Approx(1.0).epsilon(1e-12));
    }
    double tr = 0;
    for (double v : e.values) tr += v;
    CHECK(tr == doctest::Approx(trace(a).real()).epsilon(1e-12));
  }
}

TEST_CASE("vector helpers") {
  const Vec3 u = unit_from_angles(0.4, 2.0);
  CHECK(norm(u) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(dot(Vec3{{1, 2, 3}}, Vec3{{4, 5, 6}}) == 32.0);
  Mat3 a = Mat3::identity();
  a(0, 2) = 1e-3;
  CHECK(asymmetry(a) == doctest::Approx(1e-3));
  CHECK(max_eig_k(Vec3{{0, 0, 1}}, Mat3::diag(0.5, 0.2, 0.1)) == doctest::Approx(1.01));
}
