#pragma once

#include <functional>

#include "klsum/quadrature.hpp"
#include "klsum/types.hpp"

namespace klsum {

// phi(x) = (sinh^2 beta / 2 pi) x^2 exp(i x cosh beta) and its derived constants.
struct TestParams {
    double X = 0.0;
    double T = 0.0;
    double theta = 1.0 / 6.0;
    cplx beta{};        // (log X)/2 + i/(2T)
    cplx sinh_beta{};
    cplx cosh_beta{};
    cplx c{};           // -i cosh beta = a - i b
    double a = 0.0;
    double b = 0.0;
    double gamma = 0.0;  // arg c + pi/2
};

// Rejects X < 2, T < 1 and theta outside [0, 1/4].
TestParams params_new(double X, double T, double theta = 1.0 / 6.0);

cplx phi(double x, const TestParams& p);

// Closed form of the Bessel transform of phi, t > 0.
cplx phi_hat_closed(double t, const TestParams& p);
// (t + i coth(beta)/2) X^{it} e^{-t/T}
cplx phi_hat_main(double t, const TestParams& p);
// (pi i / 2 sinh(pi t)) int_0^inf (J_{2it}(x) - J_{-2it}(x)) phi(x) dx / x
QuadResult<cplx> phi_hat_quadrature(double t, const TestParams& p);

// J_nu(x) by its power series in quad precision; 0 < x <= 50, |nu| <= 60.
cplx bessel_j(cplx nu, double x);
// Hankel asymptotic expansion of J_nu(x) for x >= 25 and |nu|^2 <= x.
cplx bessel_j_hankel(cplx nu, double x);
// int_0^inf J_nu(x) x^k exp(i x cosh beta) dx for k = 0, 1, 2.
QuadResult<cplx> bessel_exp_integral(cplx nu, int k, const TestParams& p);
// -exp(-(pi + 2 i beta) t) / (i sinh beta), the k = 0, nu = 2it case in closed form.
cplx bessel_exp_integral_closed(double t, const TestParams& p);

cplx phi0_closed(const TestParams& p);
QuadResult<cplx> phi0_quadrature(const TestParams& p);

// Single xi-integral form of phi_B(x).
cplx phi_b(double x, const TestParams& p);
// phi_B(x) from its definition: int_0^1 xi x J_0(xi x) int_0^inf J_0(xi y) phi(y) dy dxi.
cplx phi_b_definition(double x, const TestParams& p);

// Phi(n, s) for real n >= 0 and Re s < 3.
cplx capital_phi(double n, cplx s, const TestParams& p);
// Phi(x, 1) in its rational form and its x-derivative.
cplx capital_phi_one(double x, const TestParams& p);
cplx capital_phi_one_derivative(double x, const TestParams& p);

// sum_{n > N} Phi(n, s) cos(n theta). At theta = 0 by Euler-Maclaurin on the two shifted Hurwitz sums, otherwise
// from the Laplace form of Phi and a geometric series under the integral sign. Needs N + 1 > 2b, and Re s < 2
// at theta = 0.
QuadResult<cplx> capital_phi_tail(long long N, cplx s, double theta, const TestParams& p);

struct PhiOneIntegral {
    cplx beta_route{};    // difference of the two Beta-function values
    cplx quadrature{};
    double scale = 0.0;   // int |Phi(x, 1)| dx
};
PhiOneIntegral capital_phi_one_integral(const TestParams& p);

struct BumpSpec {
    double N = 0.0;
    double C = 0.0;  // 2 / I0 with I0 = int_{-1}^{1} exp(-1/(1-u^2)) du
};

BumpSpec bump_new(double N);
// I0 by quadrature.
double bump_mass_constant();
double h_bump(double x, const BumpSpec& spec);
cplx h_mellin(cplx s, const BumpSpec& spec);

// (4 pi)^{s-1} int_0^inf psi(x) cos(n x / 2) x^{-s} dx. `damping` is the exponential decay rate of psi
// and `frequency` its oscillation rate; both set the panel layout.
QuadResult<cplx> psi_transform(const std::function<cplx(double)>& psi, double n, cplx s, double damping, double frequency);

double f_envelope(int j, double x, const TestParams& p);
double g_envelope(double y, const TestParams& p);

// int_0^inf x^{s-1} (1 + alpha x^h)^{-nu} dx = h^{-1} alpha^{-s/h} B(s/h, nu - s/h).
cplx beta_integral(cplx s, double h, cplx nu, cplx alpha);

}  // namespace klsum
