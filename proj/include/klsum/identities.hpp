#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "klsum/arith.hpp"
#include "klsum/parallel.hpp"
#include "klsum/testfun.hpp"
#include "klsum/types.hpp"

namespace klsum {

// sum_{l=1}^{q} S(l, l; q) cos(2 pi l n / q) against q rho_q(n^2 - 4).
IdentityReport cosine_kloosterman_check(i64 q, i64 n);

// Exhaustive run over 1 <= q <= q_max and 0 <= n <= n_max. Returns the failures (all of them).
struct CosineGridResult {
    long checked = 0;
    double worst_scaled_err = 0.0;  // max abs_err / q
    std::vector<IdentityReport> failures;
};
CosineGridResult cosine_kloosterman_grid(i64 q_max, i64 n_max, const ExecPolicy& policy = {});

// F(x, s) = sum_{n >= 0} (n + x)^{-s} psi(4 pi (n + x)) for psi = phi.
cplx f_psi(double x, cplx s, const TestParams& p);
// (F(x, s) + F(1 - x, s)) / 2 against 2 sum*_{n <= K} Phi(n, s) cos(2 pi n x). The terms beyond K are
// added from capital_phi_tail; rhs_tail carries that quadrature's error estimate.
IdentityReport fourier_check(double x, cplx s, const TestParams& p, long K);

// sum_{q <= Q} q^{-1} sum_n S(n, n; q) n^{-s} phi(4 pi n / q). The n-sum runs until phi(4 pi n / q) is
// below 1e-17 of its peak (or stops at n_max when n_max > 0, reported in the tail). The q-tail is
// extrapolated from the mean size of q^s (term at q) over (Q/2, Q] and flagged non-rigorous.
TruncatedValue z_psi_lhs(cplx s, const TestParams& p, i64 Q, i64 n_max = 0, const ExecPolicy& policy = {});

// 2 zeta(s)/zeta(2s) sum*_{n >= 0} script-L_{n^2-4}(s) Phi(n, s), summed directly for n <= N_max.
// The rest uses the mean value zeta(2s)/zeta(s+1) of script-L against capital_phi_tail, with a
// fluctuation estimate measured on (N_max/2, N_max]; flagged non-rigorous.
TruncatedValue z_psi_rhs(cplx s, const TestParams& p, i64 N_max, const ExecPolicy& policy = {});

IdentityReport kuznetsov_check(cplx s, const TestParams& p, i64 Q, i64 N_max, const ExecPolicy& policy = {});

struct ResidueResult {
    cplx value{};
    double node_change = 0.0;  // |value(nodes) - value(2 nodes)|
    double scale = 0.0;        // max |integrand| on the contour
    bool converged = false;    // node_change <= 1e-8 scale
};
// 2 res_{s=1} h~(s) zeta(s) zeta(2s-1) / zeta(2s) Phi(2, s) by the trapezoid rule on |s - 1| = radius.
ResidueResult residue_term(const TestParams& p, const BumpSpec& spec, double radius = 0.1, int nodes = 64);

// S(n, n; q) for n_lo <= n <= n_hi and 1 <= q <= Q, from one diagonal table per q.
struct DiagonalRows {
    i64 n_lo = 0, n_hi = -1, Q = 0;
    std::vector<double> S;  // S[(n - n_lo) Q + q - 1]
    double at(i64 n, i64 q) const { return S[static_cast<std::size_t>((n - n_lo) * Q + q - 1)]; }
};
DiagonalRows diagonal_rows(i64 n_lo, i64 n_hi, i64 Q, const ExecPolicy& policy = {});
// Integers inside the support (N, 2N) of the bump.
std::pair<i64, i64> bump_support(const BumpSpec& spec);

// Sum over n of h(n) sum_{q <= Q} S(n, n; q) q^{-1} phi(4 pi n / q).
TruncatedValue kloosterman_bump_sum(const TestParams& p, const BumpSpec& spec, i64 Q, const ExecPolicy& policy = {});
// Same sum with the Kloosterman values taken from precomputed rows (Q <= rows.Q, support inside the rows).
TruncatedValue kloosterman_bump_sum(const TestParams& p, const BumpSpec& spec, i64 Q, const DiagonalRows& rows,
                                    const ExecPolicy& policy = {});

// sum_{n_min <= n <= N_max, n != 2} script-L_{n^2-4}(s) Phi(n, s), the n = 0 term halved. With mean_tail the
// terms beyond N_max are added as the mean of script-L against the exact Phi tail and tail_bound is a
// fluctuation estimate. Without it tail_bound covers the omitted terms as |mean tail| plus that estimate.
TruncatedValue script_l_phi_sum(cplx s, const TestParams& p, i64 n_min, i64 N_max, bool mean_tail = true,
                                const ExecPolicy& policy = {});

struct ExactFormulaParts {
    TruncatedValue lhs;
    TruncatedValue discrete;     // (2 h~(1)/zeta(2)) sum*_{n != 2} script-L_{n^2-4}(1) Phi(n, 1)
    ResidueResult residue;
    TruncatedValue line;         // half-line integral
};
ExactFormulaParts exact_formula_parts(const TestParams& p, const BumpSpec& spec, i64 Q, i64 N_max, double t_max,
                                      const ExecPolicy& policy = {});
// pass iff abs_err <= 1e-2 |lhs| + tails.
IdentityReport exact_formula_check(const TestParams& p, const BumpSpec& spec, i64 Q, i64 N_max, double t_max,
                                   const ExecPolicy& policy = {});

// -pi|t| - t arg(n^2/4 + c^2) +/- t (arg z_+(n) - arg z_-(n)) <= 0 for both signs.
struct ArgInequality {
    bool pass = false;
    double margin = 0.0;  // the larger of the two left-hand sides; pass iff margin <= 1e-12
};
ArgInequality arg_inequality_check(double n, double t, const TestParams& p);

// arctan(2ab / (n^2/4 - b^2 + a^2)) + arctan(2a / (2b + n)) - arctan(2a / (n - 2b)) for n > 2b.
double arctan_addition_residual(double n, const TestParams& p);

}  // namespace klsum
