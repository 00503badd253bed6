#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "klsum/arith.hpp"
#include "klsum/parallel.hpp"
#include "klsum/types.hpp"

namespace klsum {

// rho_q(n) = #{x mod 2q : x^2 = n mod 4q}.
i64 rho_direct(i64 q, i64 n);
// rho_q(r) for every residue r mod 4q, by one pass over x mod 2q.
std::vector<i64> rho_direct_table(i64 q);
// Same count from local densities at the prime powers of 4q.
i64 rho_fast(i64 q, i64 n);
i64 rho_fast(const Factorization& q, i64 n);

// lambda_q(n) = sum over q1^2 q2 q3 = q of mu(q2) rho_{q3}(n).
i64 lambda_q(i64 q, i64 n);
i64 lambda_q(const Factorization& q, i64 n);

struct LambdaPartialSum {
    i64 sum = 0;        // sum over 2 < n <= z of lambda_q(n^2 - 4)
    double drift = 0.0; // sum - z mu(b)/b with q = a^2 b, b squarefree
};
LambdaPartialSum lambda_partial_sum(i64 q, double z);
double lambda_drift_aggregate(i64 Q, double z, const ExecPolicy& policy = {});

// Euler-Maclaurin evaluation; pole_error at s = 1.
cplx zeta(cplx s);
cplx hurwitz_zeta(cplx s, double a);

// chi_D(a) for a = 0..|D|-1.
struct QuadraticCharacter {
    i64 D = 1;
    std::vector<std::int8_t> values;
    explicit QuadraticCharacter(i64 d);
    i64 modulus() const { return D < 0 ? -D : D; }
    int operator()(i64 n) const { return values[static_cast<std::size_t>(mod(n, modulus()))]; }
};

// Everything about m needed to evaluate script-L_m(s) repeatedly.
struct Discriminant {
    i64 m = 0;
    bool vanishes = false;  // m = 2, 3 mod 4
    DiscriminantSplit split;
    std::shared_ptr<const QuadraticCharacter> chi;  // null when script-L_m vanishes or m = 0
    std::vector<i64> l_divisors;
};

Discriminant make_discriminant(i64 m);

// Evaluates L(s, chi_D) and script-L_m(s) for one fixed s and many discriminants,
// sharing the table of n^{-s}.
class LFunctionEvaluator {
public:
    LFunctionEvaluator(cplx s, i64 max_modulus);
    cplx s() const { return s_; }
    i64 max_modulus() const { return max_modulus_; }
    cplx dirichlet_l(const QuadraticCharacter& chi) const;
    cplx script_l(const Discriminant& d) const;

private:
    cplx power(i64 n) const { return powers_[static_cast<std::size_t>(n)]; }
    cplx s_;
    i64 max_modulus_;
    int M_ = 0;
    cplx zeta_s_{};     // zeta(s), or NaN at s = 1
    std::vector<cplx> em_coeffs_;  // B_{2j}/(2j)! (s)_{2j-1}
    std::vector<cplx> powers_;     // n^{-s}, n = 0..(M+1) max_modulus
};

cplx dirichlet_l(cplx s, i64 D);
cplx t_factor(cplx s, i64 D, i64 l);
LValue script_l(cplx s, i64 m);

struct SeriesOracle {
    TruncatedValue rho_form;     // zeta(2s)/zeta(s) sum rho_q(m) q^{-s}
    TruncatedValue lambda_form;  // sum lambda_q(m) q^{-s}
};
// Re s > 1.5 required.
SeriesOracle script_l_series_oracle(cplx s, i64 m, i64 Q);

// sum over q of lambda_q(m) e^{-q/V} / q with tail <= 1e-8 (or the requested bound).
TruncatedValue s_v(i64 m, double V, double tail_target = 1e-8);

// Rigorous upper bound for sum_{q > Q} g(q) q^{-alpha} when sum_{q <= x} g(q) <= C x (log x + 1)^k.
double dirichlet_tail_bound(double Q, double alpha, int k, double C = 1.0);

// Compares script_l(1, m) with S_V(m) - (2 pi i)^{-1} int_{(-1/2)} script-L_m(1 + s) V^s Gamma(s) ds,
// the line integral truncated at |Im s| <= t_max.
IdentityReport script_l_via_afe(i64 m, double V, double t_max = 40.0);

// Mean value over n of script-L_{n^2-4}(s): zeta(2s) / zeta(s + 1).
cplx script_l_mean(cplx s);

}  // namespace klsum
