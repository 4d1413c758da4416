#include "qcorr/states.hpp"

#include <cmath>
#include <sstream>

#include "qcorr/error.hpp"
#include "qcorr/tolerances.hpp"

namespace qcorr {

namespace {

// Pauli products sigma_a (x) sigma_b with sigma_0 = I.
const std::array<std::array<CMat4, 4>, 4>& pauli_products() {
  static const auto table = [] {
    const std::array<CMat2, 4> s{pauli::id(), pauli::x(), pauli::y(), pauli::z()};
    std::array<std::array<CMat4, 4>, 4> t{};
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = 0; b < 4; ++b) t[a][b] = kron22(s[a], s[b]);
    return t;
  }();
  return table;
}

// Re Tr(rho P) for Hermitian rho and Pauli product P.
double expectation(const CMat4& rho, const CMat4& p) {
  cplx acc{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) acc += rho(i, j) * p(j, i);
  return acc.real();
}

bool is_x_shaped(const CMat4& h) {
  constexpr std::array<std::pair<int, int>, 8> outside{
      {{0, 1}, {0, 2}, {1, 0}, {1, 3}, {2, 0}, {2, 3}, {3, 1}, {3, 2}}};
  for (auto [i, j] : outside)
    if (h(i, j) != cplx{}) return false;
  return true;
}

double gershgorin_lower(const CMat4& h) {
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < 4; ++i) {
    double radius = 0.0;
    for (std::size_t j = 0; j < 4; ++j)
      if (j != i) radius += std::abs(h(i, j));
    lo = std::min(lo, h(i, i).real() - radius);
  }
  return lo;
}

double block_min(double a, double d, cplx b) {
  const double half = 0.5 * (a - d);
  return 0.5 * (a + d) - std::sqrt(half * half + std::norm(b));
}

void require_unit_interval(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream os;
    os << what << " = " << v << " outside [0, 1]";
    throw ValidationError(os.str());
  }
}

}  // namespace

double min_eigenvalue(const CMat4& h) {
  if (is_x_shaped(h))
    return std::min(block_min(h(0, 0).real(), h(3, 3).real(), h(0, 3)),
                    block_min(h(1, 1).real(), h(2, 2).real(), h(1, 2)));
  return eigh(h).values[0];
}

DensityMatrix::DensityMatrix(const CMat4& rho) : rho_(rho) {
  if (!all_finite(rho)) throw ValidationError("density matrix has non-finite entries");
  const double herm = hermiticity_defect(rho);
  if (herm > tol::hermiticity) {
    std::ostringstream os;
    os << "density matrix is not Hermitian (defect " << herm << ")";
    throw ValidationError(os.str());
  }
  const cplx tr = trace(rho);
  if (std::abs(tr - 1.0) > tol::trace) {
    std::ostringstream os;
    os << "density matrix trace " << tr.real() << " differs from 1";
    throw ValidationError(os.str());
  }
  if (gershgorin_lower(rho) >= 0.0) return;
  const double lo = min_eigenvalue(rho);
  if (lo < -tol::psd_slack) {
    std::ostringstream os;
    os << "unphysical state: eigenvalue " << lo << " < 0";
    throw UnphysicalStateError(os.str(), lo);
  }
}

double DensityMatrix::purity() const { return trace(rho_ * rho_).real(); }

void BlochForm::validate() const {
  for (double v : x.v)
    if (!std::isfinite(v)) throw ValidationError("Bloch vector x has non-finite entries");
  for (double v : y.v)
    if (!std::isfinite(v)) throw ValidationError("Bloch vector y has non-finite entries");
  for (double v : t.m)
    if (!std::isfinite(v)) throw ValidationError("correlation matrix has non-finite entries");
  if (norm(x) > 1.0 + tol::bloch_bound) throw ValidationError("|x| exceeds 1");
  if (norm(y) > 1.0 + tol::bloch_bound) throw ValidationError("|y| exceeds 1");
  for (double v : t.m)
    if (std::abs(v) > 1.0 + tol::bloch_bound)
      throw ValidationError("correlation matrix entry outside [-1, 1]");
}

CMat4 bloch_matrix(const BlochForm& b) {
  const auto& p = pauli_products();
  CMat4 rho = p[0][0];
  for (std::size_t i = 0; i < 3; ++i) {
    rho = rho + cplx{b.x[i]} * p[i + 1][0];
    rho = rho + cplx{b.y[i]} * p[0][i + 1];
    for (std::size_t j = 0; j < 3; ++j) rho = rho + cplx{b.t(i, j)} * p[i + 1][j + 1];
  }
  return cplx{0.25} * rho;
}

DensityMatrix from_bloch(const BlochForm& b) {
  for (double v : b.x.v)
    if (!std::isfinite(v)) throw ValidationError("Bloch vector x has non-finite entries");
  for (double v : b.y.v)
    if (!std::isfinite(v)) throw ValidationError("Bloch vector y has non-finite entries");
  for (double v : b.t.m)
    if (!std::isfinite(v)) throw ValidationError("correlation matrix has non-finite entries");
  const CMat4 rho = bloch_matrix(b);
  const double lo = min_eigenvalue(rho);
  if (lo < -tol::psd_slack) {
    std::ostringstream os;
    os << "unphysical Bloch parameters: eigenvalue " << lo;
    throw UnphysicalStateError(os.str(), lo);
  }
  return DensityMatrix(rho);
}

BlochForm to_bloch(const DensityMatrix& rho) {
  const auto& p = pauli_products();
  const CMat4& m = rho.matrix();
  BlochForm b;
  for (std::size_t i = 0; i < 3; ++i) {
    b.x[i] = expectation(m, p[i + 1][0]);
    b.y[i] = expectation(m, p[0][i + 1]);
    for (std::size_t j = 0; j < 3; ++j) b.t(i, j) = expectation(m, p[i + 1][j + 1]);
  }
  return b;
}

BellEigenvalues bell_eigenvalues(const CorrelationTriple& c) {
  const auto [c1, c2, c3] = c;
  return {0.25 * (1.0 - c1 - c2 - c3), 0.25 * (1.0 - c1 + c2 + c3),
          0.25 * (1.0 + c1 - c2 + c3), 0.25 * (1.0 + c1 + c2 - c3)};
}

CorrelationTriple correlations_from_eigenvalues(const BellEigenvalues& l) {
  // <sigma_i sigma_i> on (Psi-, Phi-, Phi+, Psi+): x (-,-,+,+), y (-,+,-,+), z (-,+,+,-)
  return {-l.psi_minus - l.phi_minus + l.phi_plus + l.psi_plus,
          -l.psi_minus + l.phi_minus - l.phi_plus + l.psi_plus,
          -l.psi_minus + l.phi_minus + l.phi_plus - l.psi_plus};
}

PhysicalityReport is_physical_bell(const CorrelationTriple& c) {
  PhysicalityReport rep;
  rep.eigenvalues = bell_eigenvalues(c);
  const std::array<std::pair<const char*, double>, 4> named{{
      {"lambda_psi_minus", rep.eigenvalues.psi_minus},
      {"lambda_phi_minus", rep.eigenvalues.phi_minus},
      {"lambda_phi_plus", rep.eigenvalues.phi_plus},
      {"lambda_psi_plus", rep.eigenvalues.psi_plus},
  }};
  for (auto [name, value] : named) {
    if (!std::isfinite(value) || value < -tol::bell_eigenvalue) {
      std::ostringstream os;
      os << name << " = " << value;
      rep.violated.push_back(os.str());
    }
  }
  rep.physical = rep.violated.empty();
  return rep;
}

bool geometric_constraints_hold(const CorrelationTriple& c, double slack) {
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t j = (i + 1) % 3, k = (i + 2) % 3;
    if (std::abs(c[i]) > 1.0 + slack) return false;
    if (c[i] * c[i] - c[j] * c[j] - c[k] * c[k] < -1.0 - slack) return false;
  }
  return true;
}

BellDiagonal::BellDiagonal(const CorrelationTriple& c) : c_(c) {
  const auto rep = is_physical_bell(c);
  if (!rep.physical) {
    std::string msg = "unphysical Bell-diagonal triple:";
    for (const auto& v : rep.violated) msg += " " + v;
    throw ValidationError(msg);
  }
}

BellDiagonal BellDiagonal::from_eigenvalues(const BellEigenvalues& l) {
  if (std::abs(l.sum() - 1.0) > tol::trace) throw ValidationError("Bell weights do not sum to 1");
  return BellDiagonal(correlations_from_eigenvalues(l));
}

BlochForm BellDiagonal::bloch() const {
  BlochForm b;
  b.t = Mat3::diag(c_[0], c_[1], c_[2]);
  return b;
}

void XState::validate() const {
  for (double v : {d11, d22, d33, d44, o14, o23})
    if (!std::isfinite(v)) throw ValidationError("X state has non-finite entries");
  for (double v : {d11, d22, d33, d44})
    if (v < -tol::bell_eigenvalue) throw ValidationError("X state has a negative diagonal entry");
  if (std::abs(d11 + d22 + d33 + d44 - 1.0) > tol::trace)
    throw ValidationError("X state diagonal does not sum to 1");
  if (d11 * d44 < o14 * o14 - tol::psd_slack)
    throw UnphysicalStateError("X state violates d11*d44 >= o14^2", block_min(d11, d44, o14));
  if (d22 * d33 < o23 * o23 - tol::psd_slack)
    throw UnphysicalStateError("X state violates d22*d33 >= o23^2", block_min(d22, d33, o23));
}

XBloch x_state_bloch(const XState& x) {
  return {2.0 * x.o14 + 2.0 * x.o23, -2.0 * x.o14 + 2.0 * x.o23,
          x.d11 - x.d22 - x.d33 + x.d44, x.d11 + x.d22 - x.d33 - x.d44,
          x.d11 - x.d22 + x.d33 - x.d44};
}

CMat4 x_matrix(const XState& x) {
  CMat4 m;
  m(0, 0) = x.d11;
  m(1, 1) = x.d22;
  m(2, 2) = x.d33;
  m(3, 3) = x.d44;
  m(0, 3) = m(3, 0) = x.o14;
  m(1, 2) = m(2, 1) = x.o23;
  return m;
}

DensityMatrix to_density(const XState& x) {
  x.validate();
  return DensityMatrix(x_matrix(x));
}

XState as_x_state(const BellDiagonal& b) {
  const auto [c1, c2, c3] = b.c();
  return {0.25 * (1.0 + c3), 0.25 * (1.0 - c3), 0.25 * (1.0 - c3), 0.25 * (1.0 + c3),
          0.25 * (c1 - c2), 0.25 * (c1 + c2)};
}

DensityMatrix to_density(const BellDiagonal& b) { return DensityMatrix(x_matrix(as_x_state(b))); }

std::optional<XState> try_x_state(const CMat4& rho) {
  constexpr double eps = 1e-14;
  constexpr std::array<std::pair<int, int>, 8> outside{
      {{0, 1}, {0, 2}, {1, 0}, {1, 3}, {2, 0}, {2, 3}, {3, 1}, {3, 2}}};
  for (auto [i, j] : outside)
    if (std::abs(rho(i, j)) > eps) return std::nullopt;
  if (std::abs(rho(0, 3).imag()) > eps || std::abs(rho(1, 2).imag()) > eps) return std::nullopt;
  return XState{rho(0, 0).real(), rho(1, 1).real(), rho(2, 2).real(), rho(3, 3).real(),
                rho(0, 3).real(), rho(1, 2).real()};
}

void EWLParams::validate() const {
  require_unit_interval(r, "EWL purity r");
  require_unit_interval(alpha, "EWL alpha");
}

XState ewl(const EWLParams& p) {
  p.validate();
  const double a = p.alpha, b = p.beta(), r = p.r;
  const double noise = 0.25 * (1.0 - r);
  // Matrix entries copied from the {|11>,|10>,|01>,|00>} listing into our
  // index order (see the header comment on basis conventions).
  if (p.kind == EwlKind::Phi) return {noise, noise + b * b * r, noise + a * a * r, noise, 0.0, a * b * r};
  return {noise + b * b * r, noise, noise, noise + a * a * r, a * b * r, 0.0};
}

DensityMatrix pure_schmidt(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  CMat4 m;
  m(0, 0) = c * c;
  m(0, 3) = m(3, 0) = c * s;
  m(3, 3) = s * s;
  return DensityMatrix(m);
}

BellDiagonal werner(double c) {
  require_unit_interval(c, "Werner weight c");
  return BellDiagonal({-c, -c, -c});
}

BellDiagonal rank2_bell(double c3, Rank2Branch branch) {
  if (!(std::abs(c3) <= 1.0)) throw ValidationError("rank-2 Bell state needs |c3| <= 1");
  const double sign = branch == Rank2Branch::Plus ? 1.0 : -1.0;
  return BellDiagonal({sign, -sign * c3, c3});
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

BellDiagonal sample_bell_diagonal(Rng& rng) {
  std::array<double, 3> cut{uniform01(rng), uniform01(rng), uniform01(rng)};
  std::sort(cut.begin(), cut.end());
  const BellEigenvalues l{cut[0], cut[1] - cut[0], cut[2] - cut[1], 1.0 - cut[2]};
  return BellDiagonal(correlations_from_eigenvalues(l));
}

BellDiagonal sample_bell_diagonal(std::uint64_t seed) {
  Rng rng(seed);
  return sample_bell_diagonal(rng);
}

DensityMatrix sample_dense_state(Rng& rng) {
  std::normal_distribution<double> normal;
  CMat4 g;
  for (auto& z : g.m) z = cplx{normal(rng), normal(rng)};
  CMat4 rho = g * adjoint(g);
  const double tr = trace(rho).real();
  for (auto& z : rho.m) z /= tr;
  // Exact hermiticity after rounding.
  for (std::size_t i = 0; i < 4; ++i) {
    rho(i, i) = rho(i, i).real();
    for (std::size_t j = i + 1; j < 4; ++j) rho(j, i) = std::conj(rho(i, j));
  }
  return DensityMatrix(rho);
}

CMat2 sample_unitary2(Rng& rng) {
  std::normal_distribution<double> normal;
  std::array<double, 4> q{normal(rng), normal(rng), normal(rng), normal(rng)};
  const double n = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
  const cplx a{q[0] / n, q[1] / n}, b{q[2] / n, q[3] / n};
  CMat2 u;
  u(0, 0) = a;
  u(0, 1) = -std::conj(b);
  u(1, 0) = b;
  u(1, 1) = std::conj(a);
  return u;
}

DensityMatrix apply_local_unitary(const DensityMatrix& rho, const CMat2& ua, const CMat2& ub) {
  const CMat4 u = kron22(ua, ub);
  CMat4 out = u * rho.matrix() * adjoint(u);
  for (std::size_t i = 0; i < 4; ++i) {
    out(i, i) = out(i, i).real();
    for (std::size_t j = i + 1; j < 4; ++j) out(j, i) = std::conj(out(i, j));
  }
  return DensityMatrix(out);
}

}  // namespace qcorr
