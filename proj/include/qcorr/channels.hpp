#pragma once

// Local decoherence channels acting independently on both qubits.
//
// Entry points take the dimensionless parameters used for plotting: the
// damping strength p, Gamma*t for the non-Markovian reservoir, and g*t for
// the random external field.

#include <vector>

#include "qcorr/states.hpp"

namespace qcorr {

/// Single-qubit Kraus operators satisfying sum K^dagger K = I.
class KrausSet {
 public:
  /// Throws ValidationError if the completeness relation fails by more
  /// than tol::kraus_completeness.
  explicit KrausSet(std::vector<CMat2> ops);

  const std::vector<CMat2>& operators() const noexcept { return ops_; }

  static KrausSet identity();

 private:
  std::vector<CMat2> ops_;
};

/// sum_ij (K_i (x) K_j) rho (K_i (x) K_j)^dagger.
DensityMatrix apply_local_kraus(const DensityMatrix& rho, const KrausSet& a, const KrausSet& b);

/// {diag(1, sqrt(1-p)), diag(0, sqrt(p))}.
KrausSet phase_damping_set(double p);

/// Amplitude decay with survival P of the index-0 level:
/// {diag(sqrt(P), 1), sqrt(1-P) |1><0|}.
KrausSet amplitude_decay_set(double P);

/// Lorentzian reservoir; times are measured in units of 1/gam.
struct NonMarkovParams {
  double lam = 1e-3;  // spectral width
  double gam = 1.0;   // Markovian decay rate

  /// Throws ValidationError unless lam > 0, gam > 0 and lam < 2 gam.
  void validate() const;
  /// d = sqrt(2 gam lam - lam^2).
  double d() const;
};

/// P_t = exp(-lam t) [cos(d t / 2) + (lam / d) sin(d t / 2)]^2.
double p_kernel(double t, const NonMarkovParams& prm);

/// Zeros t_n = 2 [n pi - atan(d / lam)] / d for n = 1..n_max.
std::vector<double> pt_zeros(const NonMarkovParams& prm, int n_max);

/// f = sin^2(2 g t) / 2.
double random_field_f(double gt);

/// Field-driven rotation in the {index 0, index 1} basis; phi must be 0 or pi.
CMat2 random_field_unitary(double phi, double gt);

/// Equal-weight average over the four dephaser phase combinations.
DensityMatrix random_field_apply(const DensityMatrix& rho, double gt);

/// Bell-weight update: lambda_b^{+-} <- lambda_b^{+-} (1 - f) + lambda_b'^{-+} f.
BellEigenvalues random_field_bell_update(const BellEigenvalues& l, double f);

}  // namespace qcorr
