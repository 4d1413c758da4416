#pragma once

// Correlation quantifiers: CHSH maximum, geometric discord, concurrence,
// and the analytic corridors that bound CHSH violation.

#include <array>
#include <cstdint>
#include <optional>
#include <utility>

#include "qcorr/states.hpp"

namespace qcorr {

/// Four unit measurement directions; the constructor checks each norm.
class MeasurementSettings {
 public:
  MeasurementSettings(const Vec3& a, const Vec3& a_prime, const Vec3& b, const Vec3& b_prime);

  const Vec3& a() const noexcept { return a_; }
  const Vec3& a_prime() const noexcept { return a_prime_; }
  const Vec3& b() const noexcept { return b_; }
  const Vec3& b_prime() const noexcept { return b_prime_; }

 private:
  Vec3 a_, a_prime_, b_, b_prime_;
};

struct ChshMax {
  double B = 0.0;
  double m_rho = 0.0;
  std::array<double, 3> u{};  // eigenvalues of T^T T, descending
};

struct Discord {
  double D_G = 0.0;
  double k_max = 0.0;
};

struct CorrelationReport {
  double B = 0.0;
  double m_rho = 0.0;
  std::array<double, 3> u{};
  double D_G = 0.0;
  double k_max = 0.0;
  std::optional<double> C;
};

/// B = 2 sqrt(u1 + u2) from the two largest eigenvalues of T^T T.
ChshMax chsh_max(const BlochForm& b);

/// |a.T(b + b') + a'.T(b - b')|, the CHSH expectation at fixed settings.
double chsh_value(const BlochForm& b, const MeasurementSettings& s);

/// Settings-space maximization of chsh_value by multi-start coordinate
/// ascent over the eight polar/azimuthal angles. Deterministic for a given
/// master seed. Throws ValidationError if restarts == 0.
double chsh_brute_force(const BlochForm& b, int restarts, std::uint64_t master_seed = 0x5eed);

/// D_G = (|x|^2 + Tr(T^T T) - k_max) / 4, clamped at zero.
Discord geometric_discord(const BlochForm& b);

double chsh_max_bell(const CorrelationTriple& c);
double discord_bell(const CorrelationTriple& c);
/// 2 sqrt(2) sqrt((l1 - l4)^2 + (l2 - l3)^2) on the sorted Bell weights.
double chsh_max_bell_eigs(const BellEigenvalues& l);

struct XMeasures {
  double B = 0.0;
  double D_G = 0.0;
  std::array<double, 3> u{};  // (u1, u2, u3) in closed form, not sorted
};

XMeasures measures_x(const XState& x);
double concurrence_x(const XState& x);
/// Wootters concurrence for an arbitrary two-qubit state.
double concurrence(const DensityMatrix& rho);

/// Full report for a density matrix; C is filled in.
CorrelationReport correlation_report(const DensityMatrix& rho);
/// Report from Bloch data alone; C is left empty.
CorrelationReport correlation_report(const BlochForm& b);

struct Corridor {
  double lo = 0.0;
  double hi = 0.0;
};

/// (4 sqrt(D_G), 2 sqrt(1 + 2 D_G)) for D_G in [0, 1/2].
Corridor theorem_corridor(double D_G);
/// (2 sqrt(2)(2C + 1)/3, 2 sqrt(1 + C^2)) for C in [0, 1].
Corridor vw_corridor(double C);

}  // namespace qcorr
