#include "qcorr/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qcorr/error.hpp"
#include "qcorr/tolerances.hpp"

namespace qcorr {

namespace {

void require_unit(const Vec3& v, const char* name) {
  const double n = norm(v);
  if (!std::isfinite(n) || std::abs(n - 1.0) > tol::unit_norm) {
    std::ostringstream os;
    os << "measurement direction " << name << " has norm " << n;
    throw ValidationError(os.str());
  }
}

void require_physical(const CorrelationTriple& c) {
  const auto rep = is_physical_bell(c);
  if (!rep.physical) {
    std::string msg = "unphysical Bell-diagonal triple:";
    for (const auto& v : rep.violated) msg += " " + v;
    throw ValidationError(msg);
  }
}

std::array<double, 3> squares(const CorrelationTriple& c) {
  return {c[0] * c[0], c[1] * c[1], c[2] * c[2]};
}

}  // namespace

MeasurementSettings::MeasurementSettings(const Vec3& a, const Vec3& a_prime, const Vec3& b,
                                         const Vec3& b_prime)
    : a_(a), a_prime_(a_prime), b_(b), b_prime_(b_prime) {
  require_unit(a, "a");
  require_unit(a_prime, "a'");
  require_unit(b, "b");
  require_unit(b_prime, "b'");
}

ChshMax chsh_max(const BlochForm& b) {
  ChshMax out;
  out.u = eig_sym3(transpose(b.t) * b.t);
  out.m_rho = std::max(0.0, out.u[0] + out.u[1]);
  out.B = 2.0 * std::sqrt(out.m_rho);
  return out;
}

double chsh_value(const BlochForm& b, const MeasurementSettings& s) {
  const Vec3 sum = s.b() + s.b_prime();
  const Vec3 diff = s.b() - s.b_prime();
  return std::abs(dot(s.a(), b.t * sum) + dot(s.a_prime(), b.t * diff));
}

Discord geometric_discord(const BlochForm& b) {
  const Mat3 ttt = transpose(b.t) * b.t;
  Discord out;
  out.k_max = max_eig_k(b.x, b.t);
  out.D_G = std::max(0.0, 0.25 * (dot(b.x, b.x) + trace(ttt) - out.k_max));
  return out;
}

double chsh_max_bell(const CorrelationTriple& c) {
  require_physical(c);
  const auto s = squares(c);
  return 2.0 * std::sqrt(std::max({s[0] + s[1], s[1] + s[2], s[2] + s[0]}));
}

double discord_bell(const CorrelationTriple& c) {
  require_physical(c);
  const auto s = squares(c);
  return 0.25 * std::min({s[0] + s[1], s[1] + s[2], s[2] + s[0]});
}

double chsh_max_bell_eigs(const BellEigenvalues& l) {
  auto v = l.as_array();
  std::sort(v.begin(), v.end(), std::greater<>());
  const double d14 = v[0] - v[3], d23 = v[1] - v[2];
  return 2.0 * std::numbers::sqrt2 * std::sqrt(d14 * d14 + d23 * d23);
}

XMeasures measures_x(const XState& x) {
  x.validate();
  const double a = std::abs(x.o14), b = std::abs(x.o23);
  const double diag = x.d11 - x.d22 - x.d33 + x.d44;
  XMeasures out;
  out.u = {4.0 * (a + b) * (a + b), 4.0 * (a - b) * (a - b), diag * diag};
  out.B = std::max(2.0 * std::sqrt(out.u[0] + out.u[1]), 2.0 * std::sqrt(out.u[0] + out.u[2]));

  const XBloch p = x_state_bloch(x);
  const double c1 = p.c1 * p.c1, c2 = p.c2 * p.c2, c3m = p.c3 * p.c3 + p.m * p.m;
  out.D_G = std::max(0.0, 0.25 * (c1 + c2 + c3m - std::max({c1, c2, c3m})));
  return out;
}

double concurrence_x(const XState& x) {
  x.validate();
  const double first = std::abs(x.o14) - std::sqrt(std::max(0.0, x.d22 * x.d33));
  const double second = std::abs(x.o23) - std::sqrt(std::max(0.0, x.d11 * x.d44));
  return 2.0 * std::max({0.0, first, second});
}

double concurrence(const DensityMatrix& rho) {
  if (auto x = try_x_state(rho.matrix())) return concurrence_x(*x);

  const CMat4& m = rho.matrix();
  const CMat4 yy = kron22(pauli::y(), pauli::y());
  CMat4 conj_m;
  for (std::size_t i = 0; i < 16; ++i) conj_m.m[i] = std::conj(m.m[i]);
  const CMat4 flipped = yy * conj_m * yy;

  const auto eig = eigh(m);
  CMat4 root;
  for (std::size_t k = 0; k < 4; ++k) {
    const double s = std::sqrt(std::max(0.0, eig.values[k]));
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        root(i, j) += s * eig.vectors(i, k) * std::conj(eig.vectors(j, k));
  }
  CMat4 r = root * flipped * root;
  for (std::size_t i = 0; i < 4; ++i) {
    r(i, i) = r(i, i).real();
    for (std::size_t j = i + 1; j < 4; ++j) r(j, i) = std::conj(r(i, j));
  }
  auto mu = eigh(r).values;  // ascending
  std::array<double, 4> lam{};
  for (std::size_t k = 0; k < 4; ++k) lam[k] = std::sqrt(std::max(0.0, mu[3 - k]));
  return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

CorrelationReport correlation_report(const BlochForm& b) {
  const ChshMax c = chsh_max(b);
  const Discord d = geometric_discord(b);
  return {c.B, c.m_rho, c.u, d.D_G, d.k_max, std::nullopt};
}

CorrelationReport correlation_report(const DensityMatrix& rho) {
  CorrelationReport r = correlation_report(to_bloch(rho));
  r.C = concurrence(rho);
  return r;
}

Corridor theorem_corridor(double D_G) {
  if (!(D_G >= 0.0 && D_G <= 0.5)) {
    std::ostringstream os;
    os << "geometric discord " << D_G << " outside [0, 1/2]";
    throw ValidationError(os.str());
  }
  return {4.0 * std::sqrt(D_G), 2.0 * std::sqrt(1.0 + 2.0 * D_G)};
}

Corridor vw_corridor(double C) {
  if (!(C >= 0.0 && C <= 1.0)) {
    std::ostringstream os;
    os << "concurrence " << C << " outside [0, 1]";
    throw ValidationError(os.str());
  }
  return {2.0 * std::numbers::sqrt2 * (2.0 * C + 1.0) / 3.0, 2.0 * std::sqrt(1.0 + C * C)};
}

}  // namespace qcorr
