#include "klsum/special.hpp"

#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "klsum/quadrature.hpp"

namespace klsum {

namespace {

using std::numbers::pi;

std::array<double, 41> make_bernoulli_table() {
    // B_{2j}/(2j)! = (-1)^{j+1} 2 zeta(2j) / (2 pi)^{2j}
    std::array<double, 41> t{};
    for (int j = 1; j <= 40; ++j) {
        const double s = 2.0 * j, K = 60.0;
        double z = std::pow(K, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(K, -s) + s / 12.0 * std::pow(K, -s - 1.0)
                   - s * (s + 1.0) * (s + 2.0) / 720.0 * std::pow(K, -s - 3.0);
        for (int k = 59; k >= 1; --k) z += std::pow(static_cast<double>(k), -s);
        const double mag = 2.0 * z * std::pow(2.0 * pi, -2.0 * j);
        t[j] = (j % 2) ? mag : -mag;
    }
    return t;
}

const std::array<double, 41>& bernoulli_table() {
    static const std::array<double, 41> t = make_bernoulli_table();
    return t;
}

GaussLegendreRule compute_rule(int n) {
    GaussLegendreRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        r.weights[i] = w;
        r.weights[n - 1 - i] = w;
    }
    return r;
}

}  // namespace

const GaussLegendreRule& gauss_legendre_rule(int n) {
    if (n < 1 || n > 512) throw std::invalid_argument("gauss_legendre_rule: order out of range");
    static std::mutex m;
    static std::map<int, std::unique_ptr<GaussLegendreRule>> cache;
    std::lock_guard lock(m);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<GaussLegendreRule>(compute_rule(n));
    return *slot;
}

double bernoulli_over_factorial(int j) {
    if (j < 1 || j > 40) throw std::out_of_range("bernoulli_over_factorial: j out of range");
    return bernoulli_table()[j];
}

cplx log_gamma(cplx z) {
    if (z.real() < 0.5) throw std::domain_error("log_gamma: requires Re z >= 1/2");
    cplx shift = 0.0;
    while (std::abs(z) < 15.0) {
        shift += std::log(z);
        z += 1.0;
    }
    // Stirling series; B_{2k}/(2k(2k-1)) = (2k)!/(2k(2k-1)) * table
    cplx zi = 1.0 / z, zi2 = zi * zi, term = zi;
    cplx series = 0.0;
    double fact = 1.0;  // (2k-2)!
    for (int k = 1; k <= 12; ++k) {
        if (k > 1) fact *= (2.0 * k - 3.0) * (2.0 * k - 2.0);
        series += bernoulli_table()[k] * fact * term;
        term *= zi2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * pi) + series - shift;
}

cplx gamma(cplx z) {
    if (z.real() < 0.5) {
        if (z.imag() == 0.0 && z.real() == std::round(z.real()))
            throw std::domain_error("gamma: pole at non-positive integer");
        return pi / (std::sin(pi * z) * gamma(1.0 - z));
    }
    return std::exp(log_gamma(z));
}

cplx beta_function(cplx u, cplx v) {
    auto safe = [](cplx z) { return z.real() >= 0.5; };
    if (safe(u) && safe(v)) return std::exp(log_gamma(u) + log_gamma(v) - log_gamma(u + v));
    return gamma(u) * gamma(v) / gamma(u + v);
}

cplx expm1_over(cplx z) {
    if (std::abs(z) < 1e-3) return 1.0 + z * (0.5 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z / 120.0)));
    return (std::exp(z) - 1.0) / z;
}

}  // namespace klsum
