#include "qcorr/channels.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qcorr/error.hpp"
#include "qcorr/tolerances.hpp"

namespace qcorr {

namespace {

void require_range(double v, double lo, double hi, const char* what) {
  if (!(v >= lo && v <= hi)) {
    std::ostringstream os;
    os << what << " = " << v << " outside [" << lo << ", " << hi << "]";
    throw ValidationError(os.str());
  }
}

CMat4 hermitize(CMat4 m) {
  for (std::size_t i = 0; i < 4; ++i) {
    m(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < 4; ++j) {
      const cplx avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m(i, j) = avg;
      m(j, i) = std::conj(avg);
    }
  }
  return m;
}

}  // namespace

KrausSet::KrausSet(std::vector<CMat2> ops) : ops_(std::move(ops)) {
  if (ops_.empty()) throw ValidationError("Kraus set is empty");
  CMat2 sum;
  for (const auto& k : ops_) {
    if (!all_finite(k)) throw ValidationError("Kraus operator has non-finite entries");
    sum = sum + adjoint(k) * k;
  }
  const double defect = max_abs_diff(sum, CMat2::identity());
  if (defect > tol::kraus_completeness) {
    std::ostringstream os;
    os << "Kraus set is not trace preserving (defect " << defect << ")";
    throw ValidationError(os.str());
  }
}

KrausSet KrausSet::identity() { return KrausSet({CMat2::identity()}); }

DensityMatrix apply_local_kraus(const DensityMatrix& rho, const KrausSet& a, const KrausSet& b) {
  CMat4 out;
  for (const auto& ka : a.operators())
    for (const auto& kb : b.operators()) {
      const CMat4 k = kron22(ka, kb);
      out = out + k * rho.matrix() * adjoint(k);
    }
  return DensityMatrix(hermitize(out));
}

KrausSet phase_damping_set(double p) {
  require_range(p, 0.0, 1.0, "phase damping p");
  CMat2 k0, k1;
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - p);
  k1(1, 1) = std::sqrt(p);
  return KrausSet({k0, k1});
}

KrausSet amplitude_decay_set(double P) {
  require_range(P, 0.0, 1.0, "survival P");
  CMat2 k0, k1;
  k0(0, 0) = std::sqrt(P);
  k0(1, 1) = 1.0;
  k1(1, 0) = std::sqrt(1.0 - P);
  return KrausSet({k0, k1});
}

void NonMarkovParams::validate() const {
  if (!(lam > 0.0) || !(gam > 0.0) || !std::isfinite(lam) || !std::isfinite(gam))
    throw ValidationError("non-Markovian parameters need lam > 0 and gam > 0");
  if (lam >= 2.0 * gam)
    throw ValidationError("overdamped regime unsupported: lam >= 2 gam gives imaginary d");
}

double NonMarkovParams::d() const { return std::sqrt(2.0 * gam * lam - lam * lam); }

double p_kernel(double t, const NonMarkovParams& prm) {
  prm.validate();
  if (!(t >= 0.0)) throw ValidationError("p_kernel needs t >= 0");
  const double d = prm.d();
  const double amp = std::cos(0.5 * d * t) + prm.lam / d * std::sin(0.5 * d * t);
  return std::exp(-prm.lam * t) * amp * amp;
}

std::vector<double> pt_zeros(const NonMarkovParams& prm, int n_max) {
  prm.validate();
  if (n_max < 1) throw ValidationError("pt_zeros needs n_max >= 1");
  const double d = prm.d();
  const double shift = std::atan(d / prm.lam);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) out.push_back(2.0 * (n * std::numbers::pi - shift) / d);
  return out;
}

double random_field_f(double gt) {
  const double s = std::sin(2.0 * gt);
  return 0.5 * s * s;
}

CMat2 random_field_unitary(double phi, double gt) {
  const bool zero = std::abs(phi) <= 1e-12;
  const bool pi = std::abs(phi - std::numbers::pi) <= 1e-12;
  if (!zero && !pi) throw ValidationError("random-field dephaser phase must be 0 or pi");
  const double sign = zero ? 1.0 : -1.0;  // e^{i phi}
  const double c = std::cos(gt), s = std::sin(gt);
  CMat2 u;
  u(0, 0) = c;
  u(0, 1) = -sign * s;
  u(1, 0) = sign * s;
  u(1, 1) = c;
  return u;
}

DensityMatrix random_field_apply(const DensityMatrix& rho, double gt) {
  const std::array<CMat2, 2> u{random_field_unitary(0.0, gt),
                               random_field_unitary(std::numbers::pi, gt)};
  CMat4 out;
  for (const auto& ua : u)
    for (const auto& ub : u) {
      const CMat4 k = kron22(ua, ub);
      out = out + k * rho.matrix() * adjoint(k);
    }
  return DensityMatrix(hermitize(cplx{0.25} * out));
}

BellEigenvalues random_field_bell_update(const BellEigenvalues& l, double f) {
  require_range(f, 0.0, 0.5, "random-field f");
  const double keep = 1.0 - f;
  BellEigenvalues out;
  out.psi_plus = l.psi_plus * keep + l.phi_minus * f;
  out.psi_minus = l.psi_minus * keep + l.phi_plus * f;
  out.phi_plus = l.phi_plus * keep + l.psi_minus * f;
  out.phi_minus = l.phi_minus * keep + l.psi_plus * f;
  return out;
}

}  // namespace qcorr
