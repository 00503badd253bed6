#pragma once

#include <utility>
#include <vector>

#include "klsum/arith.hpp"
#include "klsum/parallel.hpp"

namespace klsum {

struct KloostermanSum {
    double value = 0.0;
    double imag_residual = 0.0;  // |Im| of the accumulated exponential sum
};

// S(m, n; c) = sum over reduced a mod c of e((a m + a' n) / c), a a' = 1 mod c.
KloostermanSum kloosterman_direct_detail(i64 m, i64 n, i64 c);
double kloosterman_direct(i64 m, i64 n, i64 c);

// Same value via Ramanujan sums, twisted multiplicativity over coprime prime powers,
// and the stationary-phase evaluation at odd prime powers p^k (k >= 2, p not dividing mn).
double kloosterman_fast(i64 m, i64 n, i64 c);
double kloosterman_fast(i64 m, i64 n, const Factorization& c);

std::vector<std::pair<i64, double>> kloosterman_row(i64 n, i64 Q, const ExecPolicy& policy = {});

double weil_bound(i64 m, i64 n, i64 c);

// S(r, r; q) for every residue r = 0..q-1, from the histogram of a + a' mod q and one real DFT.
std::vector<double> diagonal_table(i64 q);

}  // namespace klsum
