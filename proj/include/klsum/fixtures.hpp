#pragma once

// Tolerances, calibrated constants and reference values shared by the library, the tests and the CLI.
// Bump `version` whenever a value changes.
namespace klsum::fixtures {

inline constexpr const char* version = "1";

// approximate functional equation
inline constexpr double afe_tol_abs = 1e-6;
inline constexpr double afe_trailing_panel = 1e-8;

// test functions
inline constexpr double bump_i0 = 0.443993816168079;  // int_{-1}^{1} exp(-1/(1-u^2)) du
inline constexpr double closed_form_tol = 1e-5;      // closed forms against quadrature
inline constexpr double phi0_tol = 1e-6;
inline constexpr double phi_one_integral_rel = 1e-6;  // int Phi(x, 1) dx relative to int |Phi(x, 1)| dx

// identities
inline constexpr double cosine_tol_per_q = 1e-6;  // absolute, times q
inline constexpr double fourier_tol_abs = 1e-4;
inline constexpr double kuznetsov_tol_rel = 1e-3;
inline constexpr double exact_formula_tol_rel = 1e-2;
inline constexpr double arg_inequality_slack = 1e-12;
inline constexpr double arctan_tol = 1e-10;
inline constexpr double residue_node_rel = 1e-8;  // 64 against 128 nodes, relative to the contour scale
inline constexpr double series_oracle_tol = 1e-6;
inline constexpr double weil_rel_slack = 1e-12;
inline constexpr double fast_path_tol = 1e-8;      // kloosterman_fast against direct, times max(1, tau0(c) sqrt(c))
inline constexpr double cosine_runtime_s = 60.0;     // single thread, q <= 300
inline constexpr double kuznetsov_runtime_s = 300.0;  // six points, four workers

// reference values, each first computed and cross-checked by an independent route
inline constexpr double residue_10_4_10_re = -13.6243894187676;
inline constexpr double residue_10_4_10_im = 4.58704354705004;

// main_term at (X, T) = (10, 4) with N_max = 500 and the mean tail (regression value)
inline constexpr double main_term_10_4_re = -1.03461809077261;
inline constexpr double main_term_10_4_im = -0.690231545004635;

// experiments
inline constexpr double exponent_slack = 0.1;
inline constexpr double drift_exponent_max = 1.7;
inline constexpr long a1_scaling_Q = 8000;

}  // namespace klsum::fixtures
