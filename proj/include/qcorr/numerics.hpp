#pragma once

// Fixed-size real and complex matrix kernels for two-qubit work.
//
// Everything here is a value type with no heap allocation. Matrices are
// stored row-major.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace qcorr {

using cplx = std::complex<double>;

struct Vec3 {
  std::array<double, 3> v{};

  constexpr double& operator[](std::size_t i) { return v[i]; }
  constexpr double operator[](std::size_t i) const { return v[i]; }
};

Vec3 operator+(const Vec3& a, const Vec3& b);
Vec3 operator-(const Vec3& a, const Vec3& b);
Vec3 operator*(double s, const Vec3& a);
double dot(const Vec3& a, const Vec3& b);
double norm(const Vec3& a);
/// Unit vector from polar angle theta (from +z) and azimuth phi.
Vec3 unit_from_angles(double theta, double phi);

struct Mat3 {
  std::array<double, 9> m{};

  constexpr double& operator()(std::size_t r, std::size_t c) { return m[3 * r + c]; }
  constexpr double operator()(std::size_t r, std::size_t c) const { return m[3 * r + c]; }

  static Mat3 identity();
  static Mat3 diag(double a, double b, double c);
};

Mat3 operator*(const Mat3& a, const Mat3& b);
Mat3 operator+(const Mat3& a, const Mat3& b);
Vec3 operator*(const Mat3& a, const Vec3& x);
Mat3 transpose(const Mat3& a);
Mat3 outer(const Vec3& a, const Vec3& b);
double trace(const Mat3& a);
double det(const Mat3& a);
/// Largest |a(i,j) - a(j,i)|.
double asymmetry(const Mat3& a);

template <std::size_t N>
struct CMat {
  std::array<cplx, N * N> m{};

  static constexpr std::size_t dim = N;

  constexpr cplx& operator()(std::size_t r, std::size_t c) { return m[N * r + c]; }
  constexpr const cplx& operator()(std::size_t r, std::size_t c) const { return m[N * r + c]; }

  static CMat identity() {
    CMat out;
    for (std::size_t i = 0; i < N; ++i) out(i, i) = 1.0;
    return out;
  }
};

using CMat2 = CMat<2>;
using CMat4 = CMat<4>;

template <std::size_t N>
CMat<N> operator*(const CMat<N>& a, const CMat<N>& b) {
  CMat<N> out;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t k = 0; k < N; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < N; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

template <std::size_t N>
CMat<N> operator+(const CMat<N>& a, const CMat<N>& b) {
  CMat<N> out;
  for (std::size_t i = 0; i < N * N; ++i) out.m[i] = a.m[i] + b.m[i];
  return out;
}

template <std::size_t N>
CMat<N> operator-(const CMat<N>& a, const CMat<N>& b) {
  CMat<N> out;
  for (std::size_t i = 0; i < N * N; ++i) out.m[i] = a.m[i] - b.m[i];
  return out;
}

template <std::size_t N>
CMat<N> operator*(cplx s, const CMat<N>& a) {
  CMat<N> out;
  for (std::size_t i = 0; i < N * N; ++i) out.m[i] = s * a.m[i];
  return out;
}

template <std::size_t N>
CMat<N> adjoint(const CMat<N>& a) {
  CMat<N> out;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) out(i, j) = std::conj(a(j, i));
  return out;
}

template <std::size_t N>
cplx trace(const CMat<N>& a) {
  cplx t{};
  for (std::size_t i = 0; i < N; ++i) t += a(i, i);
  return t;
}

template <std::size_t N>
double max_abs_diff(const CMat<N>& a, const CMat<N>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < N * N; ++i) d = std::max(d, std::abs(a.m[i] - b.m[i]));
  return d;
}

/// Largest |a(i,j) - conj(a(j,i))|.
template <std::size_t N>
double hermiticity_defect(const CMat<N>& a) {
  double d = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i; j < N; ++j) d = std::max(d, std::abs(a(i, j) - std::conj(a(j, i))));
  return d;
}

template <std::size_t N>
bool all_finite(const CMat<N>& a) {
  for (const auto& z : a.m)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

/// Kronecker product a (x) b.
CMat4 kron22(const CMat2& a, const CMat2& b);

namespace pauli {
CMat2 id();
CMat2 x();
CMat2 y();
CMat2 z();
/// sigma_1, sigma_2, sigma_3 indexed 0..2.
const CMat2& sigma(std::size_t i);
}  // namespace pauli

/// Eigenvalues of a symmetric 3x3 matrix, sorted descending.
///
/// Uses the trigonometric solution of the characteristic cubic and switches
/// to cyclic Jacobi rotations when two roots are close enough that the
/// arccos step loses precision. Throws ValidationError if `m` is not
/// symmetric within tol::symmetric_input.
std::array<double, 3> eig_sym3(const Mat3& m);

/// Cyclic Jacobi eigenvalues of a symmetric 3x3 matrix, sorted descending.
std::array<double, 3> eig_sym3_jacobi(const Mat3& m);

/// Largest eigenvalue of K = x x^T + T T^T.
double max_eig_k(const Vec3& x, const Mat3& t);

/// Spectrum of a Hermitian matrix: eigenvalues ascending, with the matching
/// orthonormal eigenvectors stored as the columns of `vectors`.
template <std::size_t N>
struct HermitianEigen {
  std::array<double, N> values{};
  CMat<N> vectors;
};

/// Complex Jacobi diagonalization; exact to a few ulps for N <= 4.
template <std::size_t N>
HermitianEigen<N> eigh(const CMat<N>& a);

extern template HermitianEigen<2> eigh(const CMat<2>&);
extern template HermitianEigen<4> eigh(const CMat<4>&);

}  // namespace qcorr
