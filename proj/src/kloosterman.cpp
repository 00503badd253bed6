#include "klsum/kloosterman.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numeric>
#include <numbers>
#include <stdexcept>
#include <string>

namespace klsum {

namespace {

using std::numbers::pi;

i64 ipow(i64 b, int e) {
    i64 r = 1;
    while (e-- > 0) r *= b;
    return r;
}

u64 pow_mod(u64 b, u64 e, u64 m) {
    u64 r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mul_mod(r, b, m);
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    return r;
}

// Square root of a quadratic residue a modulo an odd prime p (Tonelli-Shanks).
i64 sqrt_mod_prime(i64 a, i64 p) {
    a = mod(a, p);
    if (p % 4 == 3) return static_cast<i64>(pow_mod(a, (p + 1) / 4, p));
    i64 q = p - 1;
    int s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    i64 z = 2;
    while (kronecker_symbol(z, p) != -1) ++z;
    u64 mm = s, c = pow_mod(z, q, p), t = pow_mod(a, q, p), r = pow_mod(a, (q + 1) / 2, p);
    while (t != 1) {
        u64 i = 0, tt = t;
        while (tt != 1) {
            tt = mul_mod(tt, tt, p);
            ++i;
        }
        u64 b = c;
        for (u64 j = 0; j + i + 1 < mm; ++j) b = mul_mod(b, b, p);
        mm = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    return static_cast<i64>(r);
}

// Root of y^2 = a mod p^k from a root mod p, by Hensel lifting (p odd, p not dividing a).
i64 hensel_lift(i64 y, i64 a, i64 p, int k) {
    i64 pk = p;
    for (int e = 2; e <= k; ++e) {
        pk *= p;
        const i64 f = mod(static_cast<i64>(static_cast<__int128>(y) * y % pk) - mod(a, pk), pk);
        const i64 inv = mod_inverse(mod(2 * y, pk), pk);
        y = mod(y - static_cast<i64>(static_cast<__int128>(f) * inv % pk), pk);
    }
    return y;
}

// Ramanujan sum c_q(n) = S(0, n; q).
double ramanujan_sum(i64 n, const Factorization& q) {
    double r = 1.0;
    for (const auto& [p, e] : q.factors) {
        const i64 pe = ipow(p, e), pe1 = pe / p;
        if (mod(n, pe) == 0)
            r *= static_cast<double>(pe - pe1);
        else if (mod(n, pe1) == 0)
            r *= static_cast<double>(-pe1);
        else
            return 0.0;
    }
    return r;
}

// p odd, k >= 2, p not dividing mn.
double salie_prime_power(i64 m, i64 n, i64 p, int k) {
    const i64 c = ipow(p, k);
    const i64 mn = static_cast<i64>(static_cast<__int128>(mod(m, c)) * mod(n, c) % c);
    if (kronecker_symbol(mn, p) != 1) return 0.0;
    const i64 y0 = hensel_lift(sqrt_mod_prime(mn, p), mn, p, k);
    const double amp = std::pow(static_cast<double>(p), 0.5 * k);
    double total = 0.0;
    for (i64 y : {y0, c - y0}) {
        const int sign = (k % 2 == 0) ? 1 : kronecker_symbol(y, p);
        const double angle = 2.0 * pi * static_cast<double>(mod(2 * y, c)) / static_cast<double>(c);
        // eps = 1 for c = 1 mod 4, eps = i otherwise; the real part keeps cos or -sin.
        total += sign * ((c % 4 == 1) ? std::cos(angle) : -std::sin(angle));
    }
    return amp * total;
}

double prime_power_sum(i64 m, i64 n, i64 p, int k) {
    const i64 c = ipow(p, k);
    if (mod(m, c) == 0) return ramanujan_sum(n, Factorization{c, {{p, k}}});
    if (mod(n, c) == 0) return ramanujan_sum(m, Factorization{c, {{p, k}}});
    if (p != 2 && k >= 2 && mod(m, p) != 0 && mod(n, p) != 0) return salie_prime_power(m, n, p, k);
    return kloosterman_direct(m, n, c);
}

std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

KloostermanSum kloosterman_direct_detail(i64 m, i64 n, i64 c) {
    if (c < 1) throw std::invalid_argument("kloosterman: modulus must be >= 1, got " + std::to_string(c));
    if (c == 1) return {1.0, 0.0};
    // Grids iterate over (m, n) for a fixed modulus, so the unit group and trig tables are kept per thread.
    struct ModulusTables {
        i64 c = 0;
        std::vector<i64> units, inverses;
        std::vector<double> cos, sin;
    };
    thread_local ModulusTables t;
    if (t.c != c) {
        t.c = c;
        t.units.clear();
        t.inverses.clear();
        for (i64 a = 1; a < c; ++a) {
            if (std::gcd(a, c) != 1) continue;
            t.units.push_back(a);
            t.inverses.push_back(mod_inverse(a, c));
        }
        t.cos.resize(static_cast<std::size_t>(c));
        t.sin.resize(static_cast<std::size_t>(c));
        for (i64 k = 0; k < c; ++k) {
            const double angle = 2.0 * pi * static_cast<double>(k) / static_cast<double>(c);
            t.cos[k] = std::cos(angle);
            t.sin[k] = std::sin(angle);
        }
    }
    const i64 mr = mod(m, c), nr = mod(n, c);
    auto index = [&](std::size_t i) {
        return static_cast<std::size_t>(
            (static_cast<__int128>(t.units[i]) * mr + static_cast<__int128>(t.inverses[i]) * nr) % c);
    };
    KloostermanSum out;
    if (c > 100000) {
        CompensatedSum<double> re, im;
        for (std::size_t i = 0; i < t.units.size(); ++i) {
            const std::size_t k = index(i);
            re.add(t.cos[k]);
            im.add(t.sin[k]);
        }
        out = {re.value(), std::abs(im.value())};
    } else {
        double re = 0.0, im = 0.0;
        for (std::size_t i = 0; i < t.units.size(); ++i) {
            const std::size_t k = index(i);
            re += t.cos[k];
            im += t.sin[k];
        }
        out = {re, std::abs(im)};
    }
    if (out.imag_residual > 1e-9 * static_cast<double>(c))
        throw std::logic_error("kloosterman_direct: imaginary residual " + std::to_string(out.imag_residual));
    return out;
}

double kloosterman_direct(i64 m, i64 n, i64 c) { return kloosterman_direct_detail(m, n, c).value; }

double kloosterman_fast(i64 m, i64 n, const Factorization& c) {
    if (c.n < 1) throw std::invalid_argument("kloosterman_fast: modulus must be >= 1");
    if (c.n == 1) return 1.0;
    if (mod(m, c.n) == 0) return ramanujan_sum(n, c);
    if (mod(n, c.n) == 0) return ramanujan_sum(m, c);
    if (c.factors.size() == 1) return prime_power_sum(m, n, c.factors[0].first, c.factors[0].second);
    // S(m, n; c1 c2) = S(m c2', n c2'; c1) S(m c1', n c1'; c2) with c2 c2' = 1 mod c1 and c1 c1' = 1 mod c2.
    double r = 1.0;
    for (const auto& [p, e] : c.factors) {
        const i64 c1 = ipow(p, e), c2 = c.n / c1;
        const i64 u = mod_inverse(mod(c2, c1), c1);
        const i64 mu = static_cast<i64>(static_cast<__int128>(mod(m, c1)) * u % c1);
        const i64 nu = static_cast<i64>(static_cast<__int128>(mod(n, c1)) * u % c1);
        r *= prime_power_sum(mu, nu, p, e);
        if (r == 0.0) break;
    }
    return r;
}

double kloosterman_fast(i64 m, i64 n, i64 c) {
    if (c < 1) throw std::invalid_argument("kloosterman_fast: modulus must be >= 1, got " + std::to_string(c));
    return kloosterman_fast(m, n, factorize(c));
}

std::vector<std::pair<i64, double>> kloosterman_row(i64 n, i64 Q, const ExecPolicy& policy) {
    if (Q < 1) throw std::invalid_argument("kloosterman_row: Q must be >= 1");
    const FactorSieve sieve(Q);
    std::vector<std::pair<i64, double>> row(static_cast<std::size_t>(Q));
    parallel_for(Q, policy, [&](i64 i) {
        const i64 q = i + 1;
        row[i] = {q, kloosterman_fast(n, n, sieve.factorize(q))};
    });
    return row;
}

double weil_bound(i64 m, i64 n, i64 c) {
    if (c < 1) throw std::invalid_argument("weil_bound: modulus must be >= 1");
    const i64 g = std::gcd(std::gcd(m < 0 ? -m : m, n < 0 ? -n : n), c);
    return static_cast<double>(tau0(c)) * std::sqrt(static_cast<double>(g)) * std::sqrt(static_cast<double>(c));
}

std::vector<double> diagonal_table(i64 q) {
    if (q < 1) throw std::invalid_argument("diagonal_table: q must be >= 1");
    if (q == 1) return {1.0};
    std::vector<double> hist(static_cast<std::size_t>(q), 0.0);
    for (i64 a = 1; a < q; ++a) {
        if (std::gcd(a, q) != 1) continue;
        hist[static_cast<std::size_t>(mod(a + mod_inverse(a, q), q))] += 1.0;
    }
    const int N = static_cast<int>(q);
    std::vector<std::complex<double>> out(static_cast<std::size_t>(N / 2 + 1));
    fftw_plan plan;
    {
        std::lock_guard lock(fftw_planner_mutex());
        plan = fftw_plan_dft_r2c_1d(N, hist.data(), reinterpret_cast<fftw_complex*>(out.data()), FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }
    // The histogram is symmetric under k -> -k (a -> -a), so the DFT is real.
    std::vector<double> table(static_cast<std::size_t>(q));
    for (int r = 0; r < N; ++r) table[r] = out[static_cast<std::size_t>(r <= N / 2 ? r : N - r)].real();
    return table;
}

}  // namespace klsum
