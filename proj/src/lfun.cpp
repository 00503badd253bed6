#include "klsum/lfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "klsum/fixtures.hpp"
#include "klsum/quadrature.hpp"
#include "klsum/special.hpp"

namespace klsum {

namespace {

using std::numbers::pi;

i64 ipow(i64 b, int e) {
    i64 r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// #{x mod p^K : x^2 = n mod p^K}.
i64 local_root_count(i64 p, int K, i64 n) {
    if (K == 0) return 1;
    const i64 pK = ipow(p, K);
    i64 r = mod(n, pK);
    if (r == 0) return ipow(p, K / 2);
    int v = 0;
    while (r % p == 0) {
        r /= p;
        ++v;
    }
    if (v % 2) return 0;
    const int j = K - v;
    i64 c;
    if (p != 2) {
        c = kronecker_symbol(r, p) == 1 ? 2 : 0;
    } else if (j == 1) {
        c = 1;
    } else if (j == 2) {
        c = mod(r, 4) == 1 ? 2 : 0;
    } else {
        c = mod(r, 8) == 1 ? 4 : 0;
    }
    return c * ipow(p, v / 2);
}

int exponent_of_two(const Factorization& q) {
    return (!q.factors.empty() && q.factors[0].first == 2) ? q.factors[0].second : 0;
}

// sum over 2f + d <= e of (-1)^d N(p^{e - 2f - d} * shift), the local factor of lambda_q.
i64 local_lambda_factor(i64 p, int e, int shift, i64 n) {
    i64 total = 0;
    for (int f = 0; 2 * f <= e; ++f)
        for (int d = 0; d <= 1 && 2 * f + d <= e; ++d) {
            const i64 v = local_root_count(p, e - 2 * f - d + shift, n);
            total += d ? -v : v;
        }
    return total;
}

struct EmPlan {
    int M = 0;
    int J = 0;
};

// Smallest M (and J terms) for which the first omitted Euler-Maclaurin term, relative to w^{-sigma}
// at w = M, is below tol.
EmPlan em_plan(cplx s, double tol = 1e-17) {
    for (int M = 1;; ++M) {
        const double w = M;
        cplx rising = s;  // (s)_{2j-1}
        for (int j = 1; j <= 40; ++j) {
            if (j > 1) rising *= (s + double(2 * j - 3)) * (s + double(2 * j - 2));
            const double term = std::abs(bernoulli_over_factorial(j) * rising) * std::pow(w, 1 - 2 * j);
            if (term < tol) return {M, j - 1};
        }
        if (M > 100000) throw std::runtime_error("euler-maclaurin plan failed");
    }
}

std::vector<cplx> em_coefficients(cplx s, int J) {
    std::vector<cplx> c(static_cast<std::size_t>(J));
    cplx rising = s;
    for (int j = 1; j <= J; ++j) {
        if (j > 1) rising *= (s + double(2 * j - 3)) * (s + double(2 * j - 2));
        c[j - 1] = bernoulli_over_factorial(j) * rising;
    }
    return c;
}

// sum_j c_j w^{1-2j}
cplx em_correction(const std::vector<cplx>& c, double w) {
    cplx acc = 0.0;
    const double w2 = 1.0 / (w * w);
    double wp = 1.0 / w;
    for (const cplx& cj : c) {
        acc += cj * wp;
        wp *= w2;
    }
    return acc;
}

// sum_{d | k} (d^2 / k)^w for k >= 1.
cplx tau_symmetric(cplx w, i64 k) {
    cplx acc = 0.0;
    for (i64 d : divisors(factorize(k))) acc += std::exp(w * std::log(static_cast<double>(d) * d / static_cast<double>(k)));
    return acc;
}

cplx t_factor_impl(cplx s, const QuadraticCharacter& chi, i64 l) {
    if (l == 1) return 1.0;
    cplx acc = 0.0;
    for (i64 l1 : divisors(factorize(l))) {
        const int mu = mobius(l1);
        const int x = chi(l1);
        if (mu == 0 || x == 0) continue;
        acc += double(mu * x) / std::sqrt(static_cast<double>(l1)) * tau_symmetric(s - 0.5, l / l1);
    }
    return acc;
}

}  // namespace

i64 rho_direct(i64 q, i64 n) {
    if (q < 1) throw std::invalid_argument("rho_direct: q must be >= 1");
    const i64 m4 = 4 * q, r = mod(n, m4);
    i64 count = 0;
    for (i64 x = 0; x < 2 * q; ++x)
        if (static_cast<i64>(static_cast<__int128>(x) * x % m4) == r) ++count;
    return count;
}

std::vector<i64> rho_direct_table(i64 q) {
    if (q < 1) throw std::invalid_argument("rho_direct_table: q must be >= 1");
    const i64 m4 = 4 * q;
    std::vector<i64> t(static_cast<std::size_t>(m4), 0);
    for (i64 x = 0; x < 2 * q; ++x) ++t[static_cast<std::size_t>(static_cast<__int128>(x) * x % m4)];
    return t;
}

i64 rho_fast(const Factorization& q, i64 n) {
    // rho_q(n) = N(4q, n) / 2 with N multiplicative over the prime powers of 4q.
    i64 count = local_root_count(2, exponent_of_two(q) + 2, n);
    for (const auto& [p, e] : q.factors) {
        if (count == 0) return 0;
        if (p != 2) count *= local_root_count(p, e, n);
    }
    return count / 2;
}

i64 rho_fast(i64 q, i64 n) {
    if (q < 1) throw std::invalid_argument("rho_fast: q must be >= 1");
    return rho_fast(factorize(q), n);
}

i64 lambda_q(const Factorization& q, i64 n) {
    i64 total = local_lambda_factor(2, exponent_of_two(q), 2, n);
    for (const auto& [p, e] : q.factors) {
        if (total == 0) return 0;
        if (p != 2) total *= local_lambda_factor(p, e, 0, n);
    }
    if (total % 2) throw std::logic_error("lambda_q: odd local product");
    return total / 2;
}

i64 lambda_q(i64 q, i64 n) {
    if (q < 1) throw std::invalid_argument("lambda_q: q must be >= 1");
    return lambda_q(factorize(q), n);
}

namespace {

LambdaPartialSum lambda_partial_sum_impl(const Factorization& f, double z) {
    if (z < 2) throw std::invalid_argument("lambda_partial_sum: z must be >= 2");
    const i64 q = f.n;
    const i64 Z = static_cast<i64>(std::floor(z));
    LambdaPartialSum out;
    const i64 period = 2 * q;
    if (Z - 2 <= period) {
        for (i64 n = 3; n <= Z; ++n) out.sum += lambda_q(f, n * n - 4);
    } else {
        // lambda_q(n^2 - 4) depends on n mod 2q only.
        for (i64 r = 0; r < period; ++r) {
            const i64 first = 3 + mod(r - 3, period);
            if (first > Z) continue;
            const i64 count = (Z - first) / period + 1;
            out.sum += count * lambda_q(f, r * r - 4);
        }
    }
    i64 b = 1;
    for (const auto& [p, e] : f.factors)
        if (e % 2) b *= p;
    out.drift = static_cast<double>(out.sum) - z * mobius(b) / static_cast<double>(b);
    return out;
}

}  // namespace

LambdaPartialSum lambda_partial_sum(i64 q, double z) {
    if (q < 1) throw std::invalid_argument("lambda_partial_sum: q must be >= 1");
    return lambda_partial_sum_impl(factorize(q), z);
}

double lambda_drift_aggregate(i64 Q, double z, const ExecPolicy& policy) {
    if (Q < 1) throw std::invalid_argument("lambda_drift_aggregate: Q must be >= 1");
    const FactorSieve sieve(Q);
    return parallel_sum<double>(Q, policy, [&](i64 begin, i64 end) {
        CompensatedSum<double> acc;
        for (i64 i = begin; i < end; ++i) acc.add(lambda_partial_sum_impl(sieve.factorize(i + 1), z).drift);
        return acc.value();
    });
}

cplx hurwitz_zeta(cplx s, double a) {
    if (!(a > 0.0 && a <= 1.0)) throw std::invalid_argument("hurwitz_zeta: a must lie in (0, 1]");
    if (s == cplx(1.0, 0.0)) throw pole_error("hurwitz_zeta: pole at s = 1");
    const EmPlan plan = em_plan(s);
    CompensatedSum<cplx> acc;
    for (int k = 0; k < plan.M; ++k) acc.add(std::exp(-s * std::log(k + a)));
    const double w = plan.M + a;
    const cplx bracket = w / (s - 1.0) + 0.5 + em_correction(em_coefficients(s, plan.J), w);
    acc.add(std::exp(-s * std::log(w)) * bracket);
    return acc.value();
}

cplx zeta(cplx s) {
    if (s == cplx(1.0, 0.0)) throw pole_error("zeta: pole at s = 1");
    return hurwitz_zeta(s, 1.0);
}

QuadraticCharacter::QuadraticCharacter(i64 d) : D(d) {
    if (d != 1 && !is_fundamental_discriminant(d))
        throw std::invalid_argument("QuadraticCharacter: " + std::to_string(d) + " is not a fundamental discriminant");
    const i64 q = modulus();
    values.resize(static_cast<std::size_t>(q));
    for (i64 a = 0; a < q; ++a) values[a] = static_cast<std::int8_t>(kronecker_symbol(d, a == 0 ? q : a));
    if (q == 1) values[0] = 1;
}

Discriminant make_discriminant(i64 m) {
    Discriminant d;
    d.m = m;
    if (m == 0) return d;
    const i64 r = mod(m, 4);
    if (r == 2 || r == 3) {
        d.vanishes = true;
        return d;
    }
    d.split = split_discriminant(m);
    d.chi = std::make_shared<const QuadraticCharacter>(d.split.D);
    d.l_divisors = divisors(factorize(d.split.l));
    return d;
}

LFunctionEvaluator::LFunctionEvaluator(cplx s, i64 max_modulus) : s_(s), max_modulus_(std::max<i64>(max_modulus, 1)) {
    const EmPlan plan = em_plan(s);
    M_ = plan.M;
    em_coeffs_ = em_coefficients(s, plan.J);
    const i64 top = (static_cast<i64>(M_) + 1) * max_modulus_;
    powers_.resize(static_cast<std::size_t>(top + 1));
    powers_[0] = 0.0;
    for (i64 n = 1; n <= top; ++n) powers_[n] = std::exp(-s * std::log(static_cast<double>(n)));
    zeta_s_ = (s == cplx(1.0, 0.0)) ? cplx(std::numeric_limits<double>::quiet_NaN(), 0.0) : zeta(s);
}

cplx LFunctionEvaluator::dirichlet_l(const QuadraticCharacter& chi) const {
    const i64 q = chi.modulus();
    if (q == 1) {
        if (s_ == cplx(1.0, 0.0)) throw pole_error("L(s, chi_1): pole at s = 1");
        return zeta_s_;
    }
    if (q > max_modulus_) throw std::invalid_argument("LFunctionEvaluator: modulus exceeds the power table");
    cplx head = 0.0;
    for (int k = 0; k < M_; ++k) {
        const i64 base = static_cast<i64>(k) * q;
        for (i64 a = 1; a < q; ++a) head += static_cast<double>(chi.values[a]) * power(base + a);
    }
    // L(s, chi) = sum_a chi(a) q^{-s} zeta(s, a/q); the Euler-Maclaurin remainder of each Hurwitz tail.
    // The w/(s-1) term is rewritten as (w^{1-s} - 1)/(s-1), valid because sum_a chi(a) = 0.
    const cplx qs = power(q);
    cplx tail = 0.0;
    const i64 base = static_cast<i64>(M_) * q;
    for (i64 a = 1; a < q; ++a) {
        const int c = chi.values[a];
        if (c == 0) continue;
        const double w = M_ + static_cast<double>(a) / static_cast<double>(q);
        const double lw = std::log(w);
        const cplx pole_part = qs * (-lw) * expm1_over((1.0 - s_) * lw);
        tail += static_cast<double>(c) * (pole_part + power(base + a) * (0.5 + em_correction(em_coeffs_, w)));
    }
    return head + tail;
}

cplx LFunctionEvaluator::script_l(const Discriminant& d) const {
    if (d.vanishes) return 0.0;
    if (d.m == 0) {
        if (s_ == cplx(1.0, 0.0)) throw pole_error("script-L_0(s) = zeta(2s-1): pole at s = 1");
        return zeta(2.0 * s_ - 1.0);
    }
    const cplx L = dirichlet_l(*d.chi);
    const i64 l = d.split.l;
    if (l == 1) return L;
    return std::exp((0.5 - s_) * std::log(static_cast<double>(l))) * t_factor_impl(s_, *d.chi, l) * L;
}

cplx dirichlet_l(cplx s, i64 D) {
    if (D == 1) return zeta(s);
    const QuadraticCharacter chi(D);
    return LFunctionEvaluator(s, chi.modulus()).dirichlet_l(chi);
}

cplx t_factor(cplx s, i64 D, i64 l) {
    if (l < 1) throw std::invalid_argument("t_factor: l must be >= 1");
    return t_factor_impl(s, QuadraticCharacter(D), l);
}

LValue script_l(cplx s, i64 m) {
    const Discriminant d = make_discriminant(m);
    LValue out;
    out.s = s;
    out.m = m;
    out.method = LMethod::decomposition;
    if (d.vanishes || d.m == 0) {
        out.value = LFunctionEvaluator(s, 1).script_l(d);
        return out;
    }
    out.value = LFunctionEvaluator(s, d.chi->modulus()).script_l(d);
    return out;
}

double dirichlet_tail_bound(double Q, double alpha, int k, double C) {
    if (!(alpha > 1.0)) throw std::invalid_argument("dirichlet_tail_bound: alpha must exceed 1");
    if (Q < 1.0) throw std::invalid_argument("dirichlet_tail_bound: Q must be >= 1");
    // alpha C int_Q^inf (log x + 1)^k x^{-alpha} dx, integrating by parts k times.
    const double beta = alpha - 1.0, L = std::log(Q) + 1.0, Qb = std::pow(Q, -beta);
    double integral = Qb / beta;
    for (int i = 1; i <= k; ++i) integral = Qb * std::pow(L, i) / beta + (i / beta) * integral;
    return C * alpha * integral;
}

SeriesOracle script_l_series_oracle(cplx s, i64 m, i64 Q) {
    if (!(s.real() > 1.5)) throw std::invalid_argument("script_l_series_oracle: requires Re s > 1.5");
    if (Q < 1) throw std::invalid_argument("script_l_series_oracle: Q must be >= 1");
    SeriesOracle out;
    out.rho_form.terms_used = out.lambda_form.terms_used = Q;
    const i64 r = mod(m, 4);
    if (r == 2 || r == 3) return out;
    const FactorSieve sieve(Q);
    CompensatedSum<cplx> rho_acc, lambda_acc;
    for (i64 q = 1; q <= Q; ++q) {
        const Factorization f = sieve.factorize(q);
        const cplx qs = std::exp(-s * std::log(static_cast<double>(q)));
        const i64 rq = rho_fast(f, m);
        if (rq) rho_acc.add(static_cast<double>(rq) * qs);
        const i64 lq = lambda_q(f, m);
        if (lq) lambda_acc.add(static_cast<double>(lq) * qs);
    }
    const double sigma = s.real(), zeta2 = pi * pi / 6;
    const cplx ratio = zeta(2.0 * s) / zeta(s);
    const double Qd = static_cast<double>(Q);
    // rho_q(m) <= 2 tau_0(q) min(sqrt q, sqrt|m|); lambda_q(m) is bounded by the same factor times
    // a function g with sum_{q <= x} g(q) <= zeta(2) x (log x + 1)^2.
    double rho_tail = 2.0 * dirichlet_tail_bound(Qd, sigma - 0.5, 1);
    double lambda_tail = 2.0 * dirichlet_tail_bound(Qd, sigma - 0.5, 2, zeta2);
    if (m != 0) {
        const double sm = std::sqrt(std::abs(static_cast<double>(m)));
        rho_tail = std::min(rho_tail, 2.0 * sm * dirichlet_tail_bound(Qd, sigma, 1));
        lambda_tail = std::min(lambda_tail, 2.0 * sm * dirichlet_tail_bound(Qd, sigma, 2, zeta2));
    }
    out.rho_form.value = ratio * rho_acc.value();
    out.rho_form.tail_bound = std::abs(ratio) * rho_tail;
    out.lambda_form.value = lambda_acc.value();
    out.lambda_form.tail_bound = lambda_tail;
    return out;
}

namespace {

// Upper bound for sum_{q > Q} |lambda_q(m)| e^{-q/V} / q by partial summation against
// sum_{q <= x} g(q) <= zeta(2) x (log x + 1)^2, with |lambda_q(m)| <= B q^gamma g(q).
double s_v_tail(double Q, double V, double B, double gamma) {
    const double zeta2 = pi * pi / 6;
    auto f = [&](double u) {
        const double x = Q + V * u;
        const double L = std::log(x) + 1.0;
        return zeta2 * L * L * std::pow(x, gamma) * std::exp(-x / V) * (1.0 / V + (1.0 - gamma) / x) * V;
    };
    return B * integrate_panels(f, 0.0, 80.0, 40, 20);
}

}  // namespace

TruncatedValue s_v(i64 m, double V, double tail_target) {
    if (!(V >= 1.0)) throw std::invalid_argument("s_v: V must be >= 1");
    if (!(tail_target > 0.0)) throw std::invalid_argument("s_v: tail target must be positive");
    TruncatedValue out;
    const i64 r = mod(m, 4);
    if (r == 2 || r == 3) {
        out.terms_used = 1;
        return out;
    }
    const double B = m == 0 ? 2.0 : 2.0 * std::sqrt(std::abs(static_cast<double>(m)));
    const double gamma = m == 0 ? 0.5 : 0.0;
    double Q = std::ceil(V);
    double tail = s_v_tail(Q, V, B, gamma);
    while (tail > tail_target) {
        Q = std::ceil(Q * 1.25);
        tail = s_v_tail(Q, V, B, gamma);
    }
    const i64 Qi = static_cast<i64>(Q);
    const FactorSieve sieve(Qi);
    CompensatedSum<double> acc;
    for (i64 q = 1; q <= Qi; ++q) {
        const i64 lq = lambda_q(sieve.factorize(q), m);
        if (lq) acc.add(static_cast<double>(lq) * std::exp(-static_cast<double>(q) / V) / static_cast<double>(q));
    }
    out.value = acc.value();
    out.tail_bound = tail;
    out.terms_used = Qi;
    return out;
}

IdentityReport script_l_via_afe(i64 m, double V, double t_max) {
    if (!(V >= 1.0)) throw std::invalid_argument("script_l_via_afe: V must be >= 1");
    if (!(t_max > 0.0)) throw std::invalid_argument("script_l_via_afe: t_max must be positive");
    const i64 n = isqrt(m + 4);
    if (m < 5 || n * n != m + 4) throw std::invalid_argument("script_l_via_afe: m must be n^2 - 4 with n >= 3");
    const Discriminant d = make_discriminant(m);
    IdentityReport rep;
    rep.name = "afe";
    rep.params = {{"m", std::to_string(m)}, {"V", std::to_string(V)}, {"t_max", std::to_string(t_max)}};
    rep.lhs = LFunctionEvaluator(1.0, d.chi->modulus()).script_l(d);
    const TruncatedValue sv = s_v(m, V);
    const double logV = std::log(V);
    // s = -1/2 + it: (2 pi i)^{-1} ds = dt / (2 pi).
    auto integrand = [&](double t) {
        const cplx s(-0.5, t);
        const cplx L = LFunctionEvaluator(1.0 + s, d.chi->modulus()).script_l(d);
        return L * std::exp(s * logV) * gamma(s) / (2 * pi);
    };
    const int panels = static_cast<int>(std::ceil(t_max));
    const cplx integral = integrate_panels(integrand, -t_max, t_max, 2 * panels, 20);
    const double width = t_max / panels;
    const double trailing = std::max(std::abs(gauss_legendre(integrand, t_max - width, t_max, 20)),
                                     std::abs(gauss_legendre(integrand, -t_max, -t_max + width, 20)));
    const double edge = std::max(std::abs(integrand(t_max)), std::abs(integrand(-t_max)));
    rep.rhs = sv.value - integral;
    // Gamma(-1/2 + it) decays like e^{-pi |t| / 2}; the remainder on each side is about edge * 2/pi.
    rep.rhs_tail = sv.tail_bound + 2.0 * edge * (2.0 / pi) * 2.0;
    rep.tol_abs = fixtures::afe_tol_abs;
    const bool converged = trailing <= fixtures::afe_trailing_panel;
    rep.params.emplace_back("converged", converged ? "true" : "false");
    finalize(rep);
    if (!converged) rep.pass = false;
    return rep;
}

cplx script_l_mean(cplx s) { return zeta(2.0 * s) / zeta(s + 1.0); }

}  // namespace klsum
