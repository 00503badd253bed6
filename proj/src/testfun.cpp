#include "klsum/testfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "klsum/arith.hpp"
#include "klsum/fixtures.hpp"
#include "klsum/special.hpp"

namespace klsum {

namespace {

using std::numbers::pi;
const cplx I(0.0, 1.0);

// Minimal complex arithmetic in quad precision for the Bessel power series.
struct QuadComplex {
    __float128 re = 0, im = 0;
    QuadComplex operator+(const QuadComplex& o) const { return {re + o.re, im + o.im}; }
    QuadComplex operator*(const QuadComplex& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
    QuadComplex operator*(__float128 s) const { return {re * s, im * s}; }
    QuadComplex inverse() const {
        const __float128 d = re * re + im * im;
        return {re / d, -im / d};
    }
    __float128 norm1() const { return (re < 0 ? -re : re) + (im < 0 ? -im : im); }
};

bool is_nonpositive_integer(cplx z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

cplx bessel_any(cplx nu, double x) { return x <= 50.0 ? bessel_j(nu, x) : bessel_j_hankel(nu, x); }

}  // namespace

TestParams params_new(double X, double T, double theta) {
    if (!(X >= 2.0)) throw std::invalid_argument("params_new: X must be >= 2, got " + std::to_string(X));
    if (!(T >= 1.0)) throw std::invalid_argument("params_new: T must be >= 1, got " + std::to_string(T));
    if (!(theta >= 0.0 && theta <= 0.25)) throw std::invalid_argument("params_new: theta must lie in [0, 1/4]");
    TestParams p;
    p.X = X;
    p.T = T;
    p.theta = theta;
    const double L = 0.5 * std::log(X), eps = 0.5 / T;
    p.beta = cplx(L, eps);
    p.sinh_beta = std::sinh(p.beta);
    p.cosh_beta = std::cosh(p.beta);
    p.a = std::sinh(L) * std::sin(eps);
    p.b = std::cosh(L) * std::cos(eps);
    p.c = cplx(p.a, -p.b);
    p.gamma = principal_arg(p.c) + pi / 2;
    return p;
}

cplx phi(double x, const TestParams& p) {
    if (x < 0.0) throw std::invalid_argument("phi: x must be >= 0");
    // exp(i x cosh beta) = exp(-c x)
    return p.sinh_beta * p.sinh_beta / (2 * pi) * x * x * std::exp(-p.c * x);
}

cplx phi_hat_closed(double t, const TestParams& p) {
    if (!(t > 0.0)) throw std::invalid_argument("phi_hat_closed: t must be positive");
    // cosh(pi t + 2 i beta t) / sinh(pi t) = e^{2 i beta t} (1 + E) / (1 - e^{-2 pi t}), E = e^{-2 pi t - 4 i beta t}
    const cplx lead = std::exp(2.0 * I * p.beta * t);
    const cplx E = std::exp(-2 * pi * t - 4.0 * I * p.beta * t);
    const double den = -std::expm1(-2 * pi * t);
    const cplx coth = p.cosh_beta / p.sinh_beta;
    return lead * (t * (1.0 + E) + I * coth * 0.5 * (1.0 - E)) / den;
}

cplx phi_hat_main(double t, const TestParams& p) {
    const cplx coth = p.cosh_beta / p.sinh_beta;
    return (t + I * coth * 0.5) * std::exp(cplx(-t / p.T, t * std::log(p.X)));
}

cplx bessel_j(cplx nu, double x) {
    if (!(x > 0.0 && x <= 50.0)) throw std::domain_error("bessel_j: x outside (0, 50]");
    if (std::abs(nu) > 60.0) throw std::domain_error("bessel_j: |nu| > 60");
    if (is_nonpositive_integer(nu + 1.0)) throw std::domain_error("bessel_j: negative integer order, use J_{-n} = (-1)^n J_n");
    const cplx lead = (nu + 1.0).real() >= 0.5 ? std::exp(nu * std::log(0.5 * x) - log_gamma(nu + 1.0))
                                               : std::exp(nu * std::log(0.5 * x)) / gamma(nu + 1.0);
    // sum_k (-x^2/4)^k / (k! (nu+1)_k)
    const __float128 y = -static_cast<__float128>(x) * x / 4;
    QuadComplex term{1, 0}, sum{1, 0};
    for (int k = 0; k < 2000; ++k) {
        const QuadComplex den{static_cast<__float128>(nu.real()) + (k + 1), static_cast<__float128>(nu.imag())};
        term = term * den.inverse() * (y / (k + 1));
        sum = sum + term;
        if (k > x && term.norm1() < 1e-32Q * sum.norm1()) break;
    }
    return lead * cplx(static_cast<double>(sum.re), static_cast<double>(sum.im));
}

cplx bessel_j_hankel(cplx nu, double x) {
    if (!(x >= 25.0)) throw std::domain_error("bessel_j_hankel: x must be >= 25");
    if (std::norm(nu) > 4 * x) throw std::domain_error("bessel_j_hankel: |nu|^2 too large for x");
    const cplx mu = 4.0 * nu * nu;
    cplx P = 0.0, Q = 0.0, a = 1.0;
    double prev = INFINITY;
    for (int k = 0; k < 400; ++k) {
        if (k > 0) a *= (mu - double((2 * k - 1) * (2 * k - 1))) / (8.0 * k * x);
        const double mag = std::abs(a);
        if (mag > prev && k > 2) break;  // asymptotic series starts to diverge
        prev = mag;
        const double sign = ((k / 2) % 2) ? -1.0 : 1.0;
        if (k % 2 == 0)
            P += sign * a;
        else
            Q += sign * a;
        if (mag < 1e-18 * std::max(std::abs(P), 1e-300)) break;
    }
    const cplx omega = x - (0.5 * nu + 0.25) * pi;
    return std::sqrt(2.0 / (pi * x)) * (P * std::cos(omega) - Q * std::sin(omega));
}

QuadResult<cplx> bessel_exp_integral(cplx nu, int k, const TestParams& p) {
    if (k < 0 || k > 2) throw std::invalid_argument("bessel_exp_integral: k must be 0, 1 or 2");
    auto f = [&](double x) { return bessel_any(nu, x) * std::pow(x, k) * std::exp(-p.c * x); };
    QuadResult<cplx> out;
    const cplx head = integrate_graded_origin(f, 1.0, 60, 20);
    const auto tail = integrate_to_infinity(f, 1.0, pi / (p.b + 1.0), 1.0 + 10.0 / p.a, 1e-14, 1.0 + 200.0 / p.a);
    out.value = head + tail.value;
    out.error = tail.error;
    out.evaluations = tail.evaluations + 1200;
    out.converged = tail.converged;
    return out;
}

cplx bessel_exp_integral_closed(double t, const TestParams& p) {
    return -std::exp(-(pi + 2.0 * I * p.beta) * t) / (I * p.sinh_beta);
}

QuadResult<cplx> phi_hat_quadrature(double t, const TestParams& p) {
    if (!(t > 0.0)) throw std::invalid_argument("phi_hat_quadrature: t must be positive");
    const auto plus = bessel_exp_integral(cplx(0.0, 2 * t), 1, p);
    const auto minus = bessel_exp_integral(cplx(0.0, -2 * t), 1, p);
    const cplx factor = pi * I / (2 * std::sinh(pi * t)) * p.sinh_beta * p.sinh_beta / (2 * pi);
    QuadResult<cplx> out;
    out.value = factor * (plus.value - minus.value);
    out.error = std::abs(factor) * (plus.error + minus.error);
    out.evaluations = plus.evaluations + minus.evaluations;
    out.converged = plus.converged && minus.converged;
    return out;
}

cplx phi0_closed(const TestParams& p) {
    const cplx s = p.sinh_beta;
    return -I / (4 * pi * pi) * (2.0 / s + 3.0 / (s * s * s));
}

QuadResult<cplx> phi0_quadrature(const TestParams& p) {
    auto f = [&](double y) { return std::cyl_bessel_j(0.0, y) * phi(y, p) / (2 * pi); };
    return integrate_to_infinity(f, 0.0, pi / (p.b + 1.0), 10.0 / p.a, 1e-14, 400.0 / p.a);
}

cplx phi_b(double x, const TestParams& p) {
    if (!(x > 0.0)) throw std::invalid_argument("phi_b: x must be positive");
    const cplx ch2 = p.cosh_beta * p.cosh_beta;
    auto f = [&](double xi) {
        const cplx z = ch2 - xi * xi;
        const cplx kernel = 2.0 / principal_pow(z, 1.5) + 3.0 * xi * xi / principal_pow(z, 2.5);
        return xi * x * std::cyl_bessel_j(0.0, xi * x) * kernel;
    };
    const int panels = 8 + static_cast<int>(x);
    return -I * p.sinh_beta * p.sinh_beta / (2 * pi) * integrate_panels(f, 0.0, 1.0, panels, 20);
}

cplx phi_b_definition(double x, const TestParams& p) {
    if (!(x > 0.0)) throw std::invalid_argument("phi_b_definition: x must be positive");
    auto inner = [&](double xi) {
        auto g = [&](double y) { return std::cyl_bessel_j(0.0, xi * y) * phi(y, p); };
        const double width = pi / (xi + p.b + 1.0);
        return integrate_to_infinity(g, 0.0, width, 10.0 / p.a, 1e-13, 400.0 / p.a).value;
    };
    auto outer = [&](double xi) { return xi * x * std::cyl_bessel_j(0.0, xi * x) * inner(xi); };
    return integrate_panels(outer, 0.0, 1.0, 8 + static_cast<int>(x), 20);
}

cplx capital_phi(double n, cplx s, const TestParams& p) {
    if (!(s.real() < 3.0)) throw std::domain_error("capital_phi: requires Re s < 3");
    if (n < 0.0) throw std::invalid_argument("capital_phi: n must be >= 0");
    const cplx w = 3.0 - s;
    const cplx pref = p.sinh_beta * p.sinh_beta / (2 * pi) * std::exp((s - 1.0) * std::log(4 * pi)) * gamma(w);
    const cplx base = p.c * p.c + n * n / 4.0;
    const cplx zp = 2.0 * p.c * I + n, zm = 2.0 * p.c * I - n;
    const cplx arctan = 0.5 * I * (principal_log(zp) - principal_log(zm));
    return pref * principal_pow(base, -0.5 * w) * std::cos(w * arctan);
}

namespace {

// sum_{n >= n0} (n + alpha)^{-w} by Euler-Maclaurin from a cutoff M >= n0, Re(n0 + alpha) > 0, Re w > 1.
// Returns the value and the size of the first omitted correction term.
std::pair<cplx, double> shifted_hurwitz(long long n0, cplx alpha, cplx w) {
    long long M = std::max<long long>(n0, static_cast<long long>(std::ceil(std::abs(w) + std::abs(alpha.imag()))) + 8);
    for (;; M *= 2) {
        const cplx z = static_cast<double>(M) + alpha;
        const cplx zw = principal_pow(z, -w);
        const cplx z2 = 1.0 / (z * z);
        cplx corr = 0.0, rising = w, zp = zw / z;  // (w)_{2j-1} z^{-w-2j+1}
        double omitted = -1.0;
        for (int j = 1; j <= 40; ++j) {
            if (j > 1) {
                rising *= (w + double(2 * j - 3)) * (w + double(2 * j - 2));
                zp *= z2;
            }
            const cplx term = bernoulli_over_factorial(j) * rising * zp;
            if (std::abs(term) < 1e-17 * std::abs(zw * z)) {
                omitted = std::abs(term);
                break;
            }
            corr += term;
        }
        if (omitted < 0.0) continue;
        CompensatedSum<cplx> head;
        for (long long n = n0; n < M; ++n) head.add(principal_pow(static_cast<double>(n) + alpha, -w));
        return {head.value() + zw * z / (w - 1.0) + 0.5 * zw + corr, omitted};
    }
}

}  // namespace

QuadResult<cplx> capital_phi_tail(long long N, cplx s, double theta, const TestParams& p) {
    if (!(static_cast<double>(N) + 1.0 > 2.0 * p.b)) throw std::domain_error("capital_phi_tail: requires N + 1 > 2b");
    const bool flat = std::cos(theta) == 1.0;
    if (flat && !(s.real() < 2.0)) throw std::domain_error("capital_phi_tail: requires Re s < 2 at theta = 0");
    if (!(s.real() < 3.0)) throw std::domain_error("capital_phi_tail: requires Re s < 3");
    const cplx w = 3.0 - s;
    const cplx pref = p.sinh_beta * p.sinh_beta / (2 * pi) * std::exp((s - 1.0) * std::log(4 * pi));
    const double start = static_cast<double>(N) + 1.0;
    // c -/+ i n/2 = (-/+ i/2)(n +/- 2ic), so Phi(n, s) = (pref Gamma(w)/2) sum over both signs of (-/+ i/2)^{-w} (n + alpha)^{-w}.
    const cplx alphas[2] = {2.0 * I * p.c, -2.0 * I * p.c};
    const cplx units[2] = {principal_pow(cplx(0.0, -0.5), -w), principal_pow(cplx(0.0, 0.5), -w)};
    if (flat) {
        cplx acc = 0.0;
        double err = 0.0, mag = 0.0;
        for (int k = 0; k < 2; ++k) {
            const auto [v, omitted] = shifted_hurwitz(N + 1, alphas[k], w);
            acc += units[k] * v;
            err += std::abs(units[k]) * omitted;
            mag += std::abs(units[k] * v);
        }
        const cplx scale = 0.5 * pref * gamma(w);
        QuadResult<cplx> out;
        out.value = scale * acc;
        out.error = std::abs(scale) * (err + 1e-15 * mag);
        return out;
    }
    auto f = [&](double u) {
        const cplx e1 = std::exp(cplx(-u, theta)), e2 = std::exp(cplx(-u, -theta));
        const cplx geo = 0.5 * (std::exp(I * (start * theta)) / (1.0 - e1) + std::exp(-I * (start * theta)) / (1.0 - e2));
        cplx acc = 0.0;
        for (int k = 0; k < 2; ++k) acc += units[k] * std::exp(-(start + alphas[k]) * u);
        return std::exp((w - 1.0) * std::log(u)) * geo * acc;
    };
    const double rate = start - 2.0 * p.b;
    const double x0 = 1.0 / (start + 2.0 * p.b);
    const int levels = 80;
    const cplx head = integrate_graded_origin(f, x0, levels, 20);
    auto tail = integrate_to_infinity(f, x0, std::min(1.0 / rate, pi / (2 * p.a + 1.0)), x0 + 40.0 / rate, 1e-15, x0 + 2000.0 / rate);
    tail.value = 0.5 * pref * (head + tail.value);
    tail.error *= 0.5 * std::abs(pref);
    return tail;
}

cplx capital_phi_one(double x, const TestParams& p) {
    const cplx c2 = p.c * p.c;
    const cplx u = x * x / (4.0 * c2);
    return p.sinh_beta * p.sinh_beta / (2 * pi * c2) * (1.0 - u) / ((1.0 + u) * (1.0 + u));
}

cplx capital_phi_one_derivative(double x, const TestParams& p) {
    const cplx c2 = p.c * p.c;
    const cplx u = x * x / (4.0 * c2);
    return p.sinh_beta * p.sinh_beta / (2 * pi * c2) * (x / (2.0 * c2)) * (u - 3.0) / ((1.0 + u) * (1.0 + u) * (1.0 + u));
}

PhiOneIntegral capital_phi_one_integral(const TestParams& p) {
    PhiOneIntegral out;
    const cplx c2 = p.c * p.c;
    const cplx pref = p.sinh_beta * p.sinh_beta / (2 * pi * c2);
    // int (1 - alpha x^2)/(1 + alpha x^2)^2 with alpha = 1/(4c^2): two Beta integrals with h = 2, nu = 2.
    const cplx alpha = 1.0 / (4.0 * c2);
    const cplx first = beta_integral(1.0, 2.0, 2.0, alpha);
    const cplx second = alpha * beta_integral(3.0, 2.0, 2.0, alpha);
    out.beta_route = pref * (first - second);

    // Quadrature in y = x / (2|c|), refined around the near-pole at y = 1.
    const double scale = 2.0 * std::abs(p.c);
    auto f = [&](double y) { return capital_phi_one(scale * y, p) * scale; };
    auto fa = [&](double y) { return std::abs(capital_phi_one(scale * y, p)) * scale; };
    const double width = std::max(std::sin(p.gamma), 1e-6);
    std::vector<double> cuts = {0.0, 0.5, 1.0 - 20 * width, 1.0 - width, 1.0, 1.0 + width, 1.0 + 20 * width, 2.0, 4.0};
    for (double& x : cuts) x = std::clamp(x, 0.0, 4.0);
    std::sort(cuts.begin(), cuts.end());
    CompensatedSum<cplx> acc;
    CompensatedSum<double> mag;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (cuts[i + 1] <= cuts[i]) continue;
        const int panels = 4 + static_cast<int>(std::ceil(8 * (cuts[i + 1] - cuts[i]) / width));
        acc.add(integrate_panels(f, cuts[i], cuts[i + 1], panels, 20));
        mag.add(integrate_panels(fa, cuts[i], cuts[i + 1], panels, 20));
    }
    acc.add(integrate_algebraic_tail(f, 4.0));
    mag.add(integrate_algebraic_tail(fa, 4.0));
    out.quadrature = acc.value();
    out.scale = mag.value();
    return out;
}

double bump_mass_constant() {
    auto f = [](double u) { return std::exp(-1.0 / (1.0 - u * u)); };
    return integrate_panels(f, -1.0, 1.0, 64, 20);
}

BumpSpec bump_new(double N) {
    if (!(N > 1.0)) throw std::invalid_argument("bump_new: N must exceed 1");
    return BumpSpec{N, 2.0 / fixtures::bump_i0};
}

double h_bump(double x, const BumpSpec& spec) {
    const double u = (x - 1.5 * spec.N) / (0.5 * spec.N);
    if (!(u > -1.0 && u < 1.0)) return 0.0;
    return spec.C * std::exp(-1.0 / (1.0 - u * u));
}

cplx h_mellin(cplx s, const BumpSpec& spec) {
    // x = N (3 + u) / 2 on u in (-1, 1); panels scale with the phase variation |t| log 2.
    auto f = [&](double u) {
        const double x = 0.5 * spec.N * (3.0 + u);
        return h_bump(x, spec) * std::exp((s - 1.0) * std::log(x)) * (0.5 * spec.N);
    };
    const int panels = 32 + static_cast<int>(std::abs(s.imag()) * 0.5);
    return integrate_panels(f, -1.0, 1.0, panels, 20);
}

QuadResult<cplx> psi_transform(const std::function<cplx(double)>& psi, double n, cplx s, double damping, double frequency) {
    if (!(damping > 0.0)) throw std::invalid_argument("psi_transform: damping must be positive");
    if (n < 0.0) throw std::invalid_argument("psi_transform: n must be >= 0");
    auto f = [&](double x) { return psi(x) * std::cos(0.5 * n * x) * std::exp(-s * std::log(x)); };
    const double width = pi / (0.5 * n + std::abs(frequency) + damping);
    const double x0 = std::min(1.0, width);
    const cplx head = integrate_graded_origin(f, x0, 60, 20);
    auto tail = integrate_to_infinity(f, x0, width, x0 + 10.0 / damping, 1e-14, x0 + 200.0 / damping);
    const cplx pref = std::exp((s - 1.0) * std::log(4 * pi));
    tail.value = pref * (head + tail.value);
    tail.error *= std::abs(pref);
    return tail;
}

double f_envelope(int j, double x, const TestParams& p) {
    if (j != 1 && j != -1) throw std::invalid_argument("f_envelope: j must be +1 or -1");
    if (!(x > 0.0)) throw std::invalid_argument("f_envelope: x must be positive");
    const double g = p.gamma;
    const double num = (1 - x) * (1 - x) + 4 * x * std::pow(std::cos(g / 2), 2);
    const double den = (1 - x) * (1 - x) + 4 * x * std::pow(std::sin(g / 2), 2);
    const double mod = std::pow((1 - x * x) * (1 - x * x) + 4 * x * x * std::pow(std::sin(g), 2), 5.0 / 8);
    return std::pow(num / den, 5.0 * j / 8) * std::pow(x, 2 * p.theta) / mod;
}

double g_envelope(double y, const TestParams& p) {
    if (!(y > 0.0)) throw std::invalid_argument("g_envelope: y must be positive");
    const double g = p.gamma;
    const double q = (1 - y * y) * (1 - y * y);
    return std::sqrt(q + 4 * y * y * std::pow(std::cos(g), 2)) / (q + 4 * y * y * std::pow(std::sin(g), 2)) *
           std::pow(y, 2 * p.theta);
}

cplx beta_integral(cplx s, double h, cplx nu, cplx alpha) {
    if (!(h > 0.0)) throw std::domain_error("beta_integral: h must be positive");
    if (alpha == cplx(0.0) || std::abs(principal_arg(alpha)) >= pi) throw std::domain_error("beta_integral: requires |arg alpha| < pi");
    if (!(s.real() > 0.0 && s.real() < h * nu.real())) throw std::domain_error("beta_integral: requires 0 < Re s < h Re nu");
    return principal_pow(alpha, -s / h) * beta_function(s / h, nu - s / h) / h;
}

}  // namespace klsum
