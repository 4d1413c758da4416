#pragma once

// Two-qubit state families and conversions between them.
//
// Matrices use the product basis {|00>, |01>, |10>, |11>} with
// sigma_z = diag(1, -1), so index 0 of each qubit is the sigma_z = +1 level.
// This is the level that decays under amplitude damping.

#include <array>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qcorr/numerics.hpp"

namespace qcorr {

/// A validated two-qubit density matrix: Hermitian, unit trace, PSD.
class DensityMatrix {
 public:
  /// Validates `rho`; throws ValidationError (or UnphysicalStateError for a
  /// negative eigenvalue below -tol::psd_slack).
  explicit DensityMatrix(const CMat4& rho);

  const CMat4& matrix() const noexcept { return rho_; }
  double purity() const;

 private:
  CMat4 rho_;
};

/// Smallest eigenvalue of a Hermitian 4x4 matrix. Skips the eigensolver
/// when a Gershgorin bound already proves positivity, and uses the 2x2 block
/// closed form for X-structured input.
double min_eigenvalue(const CMat4& h);

struct BlochForm {
  Vec3 x;  // qubit A
  Vec3 y;  // qubit B
  Mat3 t;  // t_ij = Tr(rho sigma_i (x) sigma_j)

  /// Throws ValidationError for non-finite entries or out-of-range norms.
  void validate() const;
};

/// Expands the Pauli decomposition into a density matrix.
DensityMatrix from_bloch(const BlochForm& b);
BlochForm to_bloch(const DensityMatrix& rho);
/// Same expansion without positivity validation.
CMat4 bloch_matrix(const BlochForm& b);

/// Weights on the four Bell projectors.
struct BellEigenvalues {
  double psi_minus = 0.25;
  double phi_minus = 0.25;
  double phi_plus = 0.25;
  double psi_plus = 0.25;

  std::array<double, 4> as_array() const { return {psi_minus, phi_minus, phi_plus, psi_plus}; }
  double sum() const { return psi_minus + phi_minus + phi_plus + psi_plus; }
};

using CorrelationTriple = std::array<double, 3>;

BellEigenvalues bell_eigenvalues(const CorrelationTriple& c);
CorrelationTriple correlations_from_eigenvalues(const BellEigenvalues& l);

struct PhysicalityReport {
  bool physical = false;
  BellEigenvalues eigenvalues;
  /// Names of negative Bell weights, e.g. "lambda_psi_minus = -0.5".
  std::vector<std::string> violated;
};

PhysicalityReport is_physical_bell(const CorrelationTriple& c);

/// |c_i| <= 1 and c_i^2 - c_j^2 - c_k^2 >= -1, all with `slack`.
bool geometric_constraints_hold(const CorrelationTriple& c, double slack);

/// Physical Bell-diagonal state given by its correlation triple.
class BellDiagonal {
 public:
  /// Throws ValidationError if any Bell weight is below -tol::bell_eigenvalue.
  explicit BellDiagonal(const CorrelationTriple& c);
  static BellDiagonal from_eigenvalues(const BellEigenvalues& l);

  const CorrelationTriple& c() const noexcept { return c_; }
  BellEigenvalues eigenvalues() const { return bell_eigenvalues(c_); }
  BlochForm bloch() const;

 private:
  CorrelationTriple c_;
};

struct XState {
  double d11 = 0.25, d22 = 0.25, d33 = 0.25, d44 = 0.25;
  double o14 = 0.0, o23 = 0.0;

  void validate() const;
};

struct XBloch {
  double c1 = 0, c2 = 0, c3 = 0, m = 0, n = 0;
};

XBloch x_state_bloch(const XState& x);
CMat4 x_matrix(const XState& x);
DensityMatrix to_density(const XState& x);
DensityMatrix to_density(const BellDiagonal& b);
XState as_x_state(const BellDiagonal& b);
/// Recognizes X structure with real off-diagonals (entries within 1e-14).
std::optional<XState> try_x_state(const CMat4& rho);

enum class EwlKind { Phi, Psi };

struct EWLParams {
  EwlKind kind = EwlKind::Phi;
  double r = 1.0;
  double alpha = 1.0 / std::numbers::sqrt2;

  double beta() const { return std::sqrt(std::max(0.0, 1.0 - alpha * alpha)); }
  void validate() const;
};

/// Extended Werner-like state r|chi><chi| + (1-r)/4 I as an X state.
XState ewl(const EWLParams& p);

DensityMatrix pure_schmidt(double theta);

/// Correlations (-c, -c, -c) of c|Psi-><Psi-| + (1-c) I/4.
BellDiagonal werner(double c);

enum class Rank2Branch { Plus, Minus };
/// Correlations (+-1, -+c3, c3).
BellDiagonal rank2_bell(double c3, Rank2Branch branch);

/// 64-bit seed mixing (splitmix64); used to derive independent per-sample
/// streams so parallel and serial scans draw identical states.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

using Rng = std::mt19937_64;

/// Uniform in [0, 1) with 53 random bits.
double uniform01(Rng& rng);

/// Uniform point of the Bell-diagonal tetrahedron (flat on the weight simplex).
BellDiagonal sample_bell_diagonal(Rng& rng);
BellDiagonal sample_bell_diagonal(std::uint64_t seed);

/// Hilbert-Schmidt random state G G^dagger / Tr, G complex Ginibre.
DensityMatrix sample_dense_state(Rng& rng);

/// Haar-random 2x2 unitary.
CMat2 sample_unitary2(Rng& rng);

/// (U_A (x) U_B) rho (U_A (x) U_B)^dagger.
DensityMatrix apply_local_unitary(const DensityMatrix& rho, const CMat2& ua, const CMat2& ub);

}  // namespace qcorr
