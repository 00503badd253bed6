#pragma once

#include <complex>

namespace klsum {

using cplx = std::complex<double>;

// log Gamma(z) on the standard branch (real on the positive axis); requires Re z >= 1/2.
cplx log_gamma(cplx z);
cplx gamma(cplx z);
// B(u, v) = Gamma(u) Gamma(v) / Gamma(u + v).
cplx beta_function(cplx u, cplx v);

// B_{2j} / (2j)! for 1 <= j <= 40.
double bernoulli_over_factorial(int j);

// (e^z - 1) / z, accurate near z = 0.
cplx expm1_over(cplx z);

}  // namespace klsum
