#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

namespace klsum {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using cplx = std::complex<double>;

struct Factorization {
    i64 n = 1;
    std::vector<std::pair<i64, int>> factors;  // (prime, exponent), primes increasing
};

Factorization factorize(i64 n);
bool is_prime(u64 n);

int mobius(i64 n);
i64 tau0(i64 n);
i64 euler_phi(i64 n);
int mobius(const Factorization& f);
i64 tau0(const Factorization& f);
i64 euler_phi(const Factorization& f);

// All positive divisors, increasing.
std::vector<i64> divisors(const Factorization& f);

i64 gcd(i64 a, i64 b);
// Residue in [0, m).
i64 mod(i64 a, i64 m);
// Inverse of a modulo m; throws if gcd(a, m) != 1.
i64 mod_inverse(i64 a, i64 m);
// (a * b) mod m without overflow.
u64 mul_mod(u64 a, u64 b, u64 m);
// Largest s with s*s <= n.
i64 isqrt(i64 n);

bool is_fundamental_discriminant(i64 d);
// Kronecker symbol (D/n). D must be a fundamental discriminant or 1.
int kronecker(i64 d, i64 n);
// Unrestricted Kronecker symbol (a/n).
int kronecker_symbol(i64 a, i64 n);

struct DiscriminantSplit {
    i64 m = 1;
    i64 D = 1;
    i64 l = 1;
};

// m = D * l^2 with D fundamental (or D = 1 when m is a perfect square).
DiscriminantSplit split_discriminant(i64 m);

// Argument in (-pi, pi]; the negative real axis maps to +pi regardless of the zero's sign.
double principal_arg(cplx z);
cplx principal_log(cplx z);
cplx principal_pow(cplx z, cplx w);

// Smallest-prime-factor table for fast factorization of every n <= limit.
class FactorSieve {
public:
    explicit FactorSieve(i64 limit);
    i64 limit() const { return limit_; }
    Factorization factorize(i64 n) const;
    int mobius(i64 n) const;

private:
    i64 limit_;
    std::vector<std::int32_t> spf_;
};

}  // namespace klsum
