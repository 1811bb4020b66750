#pragma once

// Central tolerance table. Every numeric threshold used by the library and
// the acceptance suite lives here so the two cannot drift apart.

namespace quench::tol {

inline constexpr double hermitian = 1e-12;      // |A - A^dag| elementwise
inline constexpr double unitary = 1e-10;        // |U^dag U - I| elementwise
inline constexpr double state_norm = 1e-12;     // | ||psi|| - 1 |
inline constexpr double trace_one = 1e-12;      // | tr(rho) - 1 |
inline constexpr double psd_eigen = -1e-10;     // density-matrix eigenvalue floor
inline constexpr double expm_cross = 1e-10;     // closed form vs eigendecomposition
inline constexpr double sinc_switch = 1e-8;     // |E t| below which sin(Et)/E -> t
inline constexpr double gap_rel = 1e-9;         // E^2 vs sum of squares, relative

// topology
inline constexpr double bis_residual_rel = 1e-6;   // |h0| <= bis_residual_rel * xi0
inline constexpr double grad_floor_rel = 1e-9;     // |grad h0| >= grad_floor_rel * xi0
inline constexpr double g_floor = 1e-3;            // dynamical-field magnitude floor
inline constexpr double flagged_fraction_max = 0.01;
inline constexpr double boundary_rel = 1e-6;       // phase-boundary detection band

// Degree-sum orientation: "inside out" = along +grad h0. Calibrated once so
// that the analytic oracle yields -1 for the m_z = 1.3*xi0 phase and frozen.
inline constexpr double degree_sign = -1.0;

}  // namespace quench::tol
