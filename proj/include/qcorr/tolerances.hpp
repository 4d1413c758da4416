#pragma once

// Numerical slack used by every validity check in the library.

namespace qcorr::tol {

inline constexpr double hermiticity = 1e-12;
inline constexpr double trace = 1e-12;
inline constexpr double psd_slack = 1e-10;        // smallest eigenvalue allowed is -psd_slack
inline constexpr double eigen_residual = 1e-9;
inline constexpr double symmetric_input = 1e-10;  // eig_sym3 precondition
inline constexpr double unit_norm = 1e-12;
inline constexpr double bell_eigenvalue = 1e-12;  // Bell-diagonal lambdas may dip to -this
inline constexpr double bloch_bound = 1e-10;
inline constexpr double kraus_completeness = 1e-12;
inline constexpr double discord_zero = 1e-9;      // D_G event threshold
inline constexpr double discord_clamp = 1e-12;

}  // namespace qcorr::tol
