#include "klsum/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <numbers>
#include <stdexcept>
#include <string>
#include <tuple>

namespace klsum {

namespace {

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

// Brent's variant of Pollard rho; n is odd, composite, and > 10^12.
u64 rho_split(u64 n) {
    for (u64 c = 1;; ++c) {
        u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
        const u64 m = 128;
        u64 r = 1;
        auto f = [&](u64 v) { return (mul_mod(v, v, n) + c) % n; };
        do {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mul_mod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r <<= 1;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void collect_factors(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    u64 d = rho_split(n);
    collect_factors(d, out);
    collect_factors(n / d, out);
}

Factorization from_prime_list(i64 n, std::vector<u64> primes) {
    std::sort(primes.begin(), primes.end());
    Factorization f;
    f.n = n;
    for (u64 p : primes) {
        if (!f.factors.empty() && f.factors.back().first == static_cast<i64>(p))
            ++f.factors.back().second;
        else
            f.factors.emplace_back(static_cast<i64>(p), 1);
    }
    return f;
}

}  // namespace

u64 mul_mod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These bases are deterministic for all 64-bit n.
    for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        u64 x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

Factorization factorize(i64 n) {
    if (n <= 0) throw std::invalid_argument("factorize: n must be positive, got " + std::to_string(n));
    std::vector<u64> primes;
    u64 m = static_cast<u64>(n);
    for (u64 p = 2; p <= 1000000 && p * p <= m; p += (p == 2 ? 1 : 2)) {
        while (m % p == 0) {
            primes.push_back(p);
            m /= p;
        }
    }
    if (m > 1) {
        if (m <= 1000000ull * 1000000ull || is_prime(m))
            primes.push_back(m);
        else
            collect_factors(m, primes);
    }
    return from_prime_list(n, std::move(primes));
}

int mobius(const Factorization& f) {
    for (const auto& [p, e] : f.factors)
        if (e > 1) return 0;
    return (f.factors.size() % 2) ? -1 : 1;
}

i64 tau0(const Factorization& f) {
    i64 t = 1;
    for (const auto& [p, e] : f.factors) t *= e + 1;
    return t;
}

i64 euler_phi(const Factorization& f) {
    i64 r = 1;
    for (const auto& [p, e] : f.factors) {
        r *= p - 1;
        for (int i = 1; i < e; ++i) r *= p;
    }
    return r;
}

int mobius(i64 n) { return mobius(factorize(n)); }
i64 tau0(i64 n) { return tau0(factorize(n)); }
i64 euler_phi(i64 n) { return euler_phi(factorize(n)); }

std::vector<i64> divisors(const Factorization& f) {
    std::vector<i64> d{1};
    for (const auto& [p, e] : f.factors) {
        const std::size_t base = d.size();
        i64 pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) d.push_back(d[i] * pk);
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

i64 gcd(i64 a, i64 b) { return std::gcd(a, b); }

i64 mod(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

i64 mod_inverse(i64 a, i64 m) {
    i64 old_r = mod(a, m), r = m, old_s = 1, s = 0;
    while (r != 0) {
        i64 q = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
    }
    if (old_r != 1 && m != 1)
        throw std::invalid_argument("mod_inverse: " + std::to_string(a) + " not invertible mod " + std::to_string(m));
    return mod(old_s, m);
}

i64 isqrt(i64 n) {
    if (n < 0) throw std::invalid_argument("isqrt of negative number");
    i64 s = static_cast<i64>(std::sqrt(static_cast<double>(n)));
    while (s * s > n) --s;
    while ((s + 1) * (s + 1) <= n) ++s;
    return s;
}

bool is_fundamental_discriminant(i64 d) {
    if (d == 0 || d == 1) return false;
    auto squarefree = [](i64 k) { return mobius(factorize(k < 0 ? -k : k)) != 0; };
    i64 r = mod(d, 4);
    if (r == 1) return squarefree(d);
    if (r != 0) return false;
    i64 k = d / 4;
    i64 rk = mod(k, 4);
    return (rk == 2 || rk == 3) && squarefree(k);
}

int kronecker_symbol(i64 a, i64 n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int k = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) k = -k;
    }
    int v = 0;
    while ((n & 1) == 0) {
        n >>= 1;
        ++v;
    }
    if (v > 0) {
        if ((a & 1) == 0) return 0;
        i64 r8 = mod(a, 8);
        if ((v & 1) && (r8 == 3 || r8 == 5)) k = -k;
    }
    // Jacobi symbol (a/n) for odd n > 0.
    i64 x = mod(a, n), y = n;
    while (x != 0) {
        while ((x & 1) == 0) {
            x >>= 1;
            i64 r8 = y & 7;
            if (r8 == 3 || r8 == 5) k = -k;
        }
        std::swap(x, y);
        if ((x & 3) == 3 && (y & 3) == 3) k = -k;
        x %= y;
    }
    return y == 1 ? k : 0;
}

int kronecker(i64 d, i64 n) {
    if (d != 1 && !is_fundamental_discriminant(d))
        throw std::invalid_argument("kronecker: " + std::to_string(d) + " is not a fundamental discriminant");
    return kronecker_symbol(d, n);
}

DiscriminantSplit split_discriminant(i64 m) {
    if (m == 0) throw std::invalid_argument("split_discriminant: m = 0");
    if (mod(m, 4) == 2 || mod(m, 4) == 3)
        throw std::invalid_argument("split_discriminant: " + std::to_string(m) + " is 2 or 3 mod 4");
    const Factorization f = factorize(m < 0 ? -m : m);
    i64 core = m < 0 ? -1 : 1;
    i64 l = 1;
    for (const auto& [p, e] : f.factors) {
        for (int i = 0; i < e / 2; ++i) l *= p;
        if (e % 2) core *= p;
    }
    // core is squarefree; fundamental unless core = 2,3 mod 4, in which case 4*core is.
    if (mod(core, 4) != 1) {
        core *= 4;
        l /= 2;
    }
    return {m, core, l};
}

double principal_arg(cplx z) {
    if (z.imag() == 0.0 && z.real() < 0.0) return std::numbers::pi;
    return std::arg(z);
}

cplx principal_log(cplx z) {
    if (z == cplx(0.0, 0.0)) throw std::domain_error("principal_log: z = 0");
    return {std::log(std::abs(z)), principal_arg(z)};
}

cplx principal_pow(cplx z, cplx w) {
    if (z == cplx(0.0, 0.0)) throw std::domain_error("principal_pow: z = 0");
    return std::exp(w * principal_log(z));
}

FactorSieve::FactorSieve(i64 limit) : limit_(std::max<i64>(limit, 1)), spf_(limit_ + 1, 0) {
    for (i64 i = 2; i <= limit_; ++i) {
        if (spf_[i] != 0) continue;
        for (i64 j = i; j <= limit_; j += i)
            if (spf_[j] == 0) spf_[j] = static_cast<std::int32_t>(i);
    }
}

Factorization FactorSieve::factorize(i64 n) const {
    if (n <= 0) throw std::invalid_argument("FactorSieve::factorize: n must be positive");
    if (n > limit_) return klsum::factorize(n);
    Factorization f;
    f.n = n;
    while (n > 1) {
        i64 p = spf_[n];
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.factors.emplace_back(p, e);
    }
    return f;
}

int FactorSieve::mobius(i64 n) const { return klsum::mobius(factorize(n)); }

}  // namespace klsum
