#include "qcorr/numerics.hpp"

#include <numbers>

#include "qcorr/error.hpp"
#include "qcorr/tolerances.hpp"

namespace qcorr {

Vec3 operator+(const Vec3& a, const Vec3& b) { return {{a[0] + b[0], a[1] + b[1], a[2] + b[2]}}; }
Vec3 operator-(const Vec3& a, const Vec3& b) { return {{a[0] - b[0], a[1] - b[1], a[2] - b[2]}}; }
Vec3 operator*(double s, const Vec3& a) { return {{s * a[0], s * a[1], s * a[2]}}; }
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

Vec3 unit_from_angles(double theta, double phi) {
  const double st = std::sin(theta);
  return {{st * std::cos(phi), st * std::sin(phi), std::cos(theta)}};
}

Mat3 Mat3::identity() { return diag(1.0, 1.0, 1.0); }

Mat3 Mat3::diag(double a, double b, double c) {
  Mat3 out;
  out(0, 0) = a;
  out(1, 1) = b;
  out(2, 2) = c;
  return out;
}

Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 out;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      out(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j) + a(i, 2) * b(2, j);
  return out;
}

Mat3 operator+(const Mat3& a, const Mat3& b) {
  Mat3 out;
  for (std::size_t i = 0; i < 9; ++i) out.m[i] = a.m[i] + b.m[i];
  return out;
}

Vec3 operator*(const Mat3& a, const Vec3& x) {
  Vec3 out;
  for (std::size_t i = 0; i < 3; ++i) out[i] = a(i, 0) * x[0] + a(i, 1) * x[1] + a(i, 2) * x[2];
  return out;
}

Mat3 transpose(const Mat3& a) {
  Mat3 out;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) out(i, j) = a(j, i);
  return out;
}

Mat3 outer(const Vec3& a, const Vec3& b) {
  Mat3 out;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) out(i, j) = a[i] * b[j];
  return out;
}

double trace(const Mat3& a) { return a(0, 0) + a(1, 1) + a(2, 2); }

double det(const Mat3& a) {
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
         a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

double asymmetry(const Mat3& a) {
  return std::max({std::abs(a(0, 1) - a(1, 0)), std::abs(a(0, 2) - a(2, 0)),
                   std::abs(a(1, 2) - a(2, 1))});
}

CMat4 kron22(const CMat2& a, const CMat2& b) {
  CMat4 out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

namespace pauli {

CMat2 id() { return CMat2::identity(); }

CMat2 x() {
  CMat2 s;
  s(0, 1) = 1.0;
  s(1, 0) = 1.0;
  return s;
}

CMat2 y() {
  CMat2 s;
  s(0, 1) = cplx{0.0, -1.0};
  s(1, 0) = cplx{0.0, 1.0};
  return s;
}

CMat2 z() {
  CMat2 s;
  s(0, 0) = 1.0;
  s(1, 1) = -1.0;
  return s;
}

const CMat2& sigma(std::size_t i) {
  static const std::array<CMat2, 3> table{x(), y(), z()};
  return table.at(i);
}

}  // namespace pauli

namespace {

std::array<double, 3> sorted_desc(std::array<double, 3> e) {
  std::sort(e.begin(), e.end(), std::greater<>());
  return e;
}

}  // namespace

std::array<double, 3> eig_sym3_jacobi(const Mat3& m) {
  Mat3 a = m;
  for (int sweep = 0; sweep < 64; ++sweep) {
    const double off = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
    if (off == 0.0) break;
    for (std::size_t p = 0; p < 2; ++p)
      for (std::size_t q = p + 1; q < 3; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // a <- R^T a R with R = [[c, s], [-s, c]] in the (p, q) plane
        for (std::size_t k = 0; k < 3; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < 3; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
  }
  return sorted_desc({a(0, 0), a(1, 1), a(2, 2)});
}

std::array<double, 3> eig_sym3(const Mat3& m) {
  for (double v : m.m)
    if (!std::isfinite(v)) throw ValidationError("eig_sym3: non-finite entry");
  if (asymmetry(m) > tol::symmetric_input)
    throw ValidationError("eig_sym3: matrix is not symmetric");

  const double a01 = 0.5 * (m(0, 1) + m(1, 0));
  const double a02 = 0.5 * (m(0, 2) + m(2, 0));
  const double a12 = 0.5 * (m(1, 2) + m(2, 1));
  const double off = a01 * a01 + a02 * a02 + a12 * a12;
  if (off == 0.0) return sorted_desc({m(0, 0), m(1, 1), m(2, 2)});

  Mat3 s = m;
  s(0, 1) = s(1, 0) = a01;
  s(0, 2) = s(2, 0) = a02;
  s(1, 2) = s(2, 1) = a12;

  const double q = trace(s) / 3.0;
  const double d0 = s(0, 0) - q, d1 = s(1, 1) - q, d2 = s(2, 2) - q;
  const double p = std::sqrt((d0 * d0 + d1 * d1 + d2 * d2 + 2.0 * off) / 6.0);
  if (p == 0.0) return {q, q, q};

  Mat3 b = s;
  for (std::size_t i = 0; i < 3; ++i) b(i, i) -= q;
  for (double& v : b.m) v /= p;
  const double r = std::clamp(det(b) / 2.0, -1.0, 1.0);

  // Near a repeated root acos(r) is ill-conditioned.
  if (1.0 - std::abs(r) < 1e-4) return eig_sym3_jacobi(s);

  const double phi = std::acos(r) / 3.0;
  const double e1 = q + 2.0 * p * std::cos(phi);
  const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  const double e2 = 3.0 * q - e1 - e3;
  return sorted_desc({e1, e2, e3});
}

double max_eig_k(const Vec3& x, const Mat3& t) {
  return eig_sym3(outer(x, x) + t * transpose(t))[0];
}

template <std::size_t N>
HermitianEigen<N> eigh(const CMat<N>& in) {
  CMat<N> a = in;
  CMat<N> v = CMat<N>::identity();

  double scale = 0.0;
  for (const auto& z : a.m) scale = std::max(scale, std::abs(z));
  const double stop = scale * 1e-18;

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = i + 1; j < N; ++j) off = std::max(off, std::abs(a(i, j)));
    if (off <= stop) break;

    for (std::size_t p = 0; p < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag <= stop) continue;
        // Phase column q so that a(p, q) becomes real and positive, then
        // apply a real Jacobi rotation in the (p, q) plane.
        const cplx w = std::conj(a(p, q) / mag);
        const double app = a(p, p).real(), aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // J = D R with D = diag(.., w at q, ..), R real rotation.
        // Columns: new_p = c e_p - s w e_q ; new_q = s e_p + c w e_q
        for (std::size_t k = 0; k < N; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * w * akq;
          a(k, q) = s * akp + c * w * akq;
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * w * vkq;
          v(k, q) = s * vkp + c * w * vkq;
        }
        for (std::size_t k = 0; k < N; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * std::conj(w) * aqk;
          a(q, k) = s * apk + c * std::conj(w) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
  }

  std::array<std::size_t, N> order{};
  for (std::size_t i = 0; i < N; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  HermitianEigen<N> out;
  for (std::size_t k = 0; k < N; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < N; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

template HermitianEigen<2> eigh(const CMat<2>&);
template HermitianEigen<4> eigh(const CMat<4>&);

}  // namespace qcorr
