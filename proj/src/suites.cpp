#include "klsum/suites.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "klsum/fixtures.hpp"
#include "klsum/identities.hpp"
#include "klsum/lfun.hpp"
#include "klsum/testfun.hpp"

namespace klsum {

namespace {

std::string num(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

// Report for a pair of values that must agree within tol_abs + tails.
IdentityReport compare(std::string name, cplx lhs, cplx rhs, double tol_abs, std::vector<std::pair<std::string, std::string>> params,
                       double lhs_tail = 0.0, double rhs_tail = 0.0) {
    IdentityReport r;
    r.name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    r.tol_abs = tol_abs;
    r.lhs_tail = lhs_tail;
    r.rhs_tail = rhs_tail;
    r.params = std::move(params);
    finalize(r);
    return r;
}

// Report for a bound: lhs is the worst observed value, rhs the limit, abs_err the excess over the limit.
IdentityReport bound(std::string name, double worst, double limit, std::vector<std::pair<std::string, std::string>> params) {
    IdentityReport r;
    r.name = std::move(name);
    r.lhs = worst;
    r.rhs = limit;
    r.abs_err = std::max(0.0, worst - limit);
    r.rel_err = limit != 0.0 ? r.abs_err / std::abs(limit) : 0.0;
    r.params = std::move(params);
    r.pass = worst <= limit;
    return r;
}

std::vector<IdentityReport> cosine_suite(const SuiteConfig& cfg) {
    const auto g = cosine_kloosterman_grid(cfg.q_max, cfg.cosine_n_max, cfg.policy);
    std::vector<IdentityReport> out;
    out.push_back(bound("cosine-kloosterman-grid", g.worst_scaled_err, fixtures::cosine_tol_per_q,
                        {{"q_max", std::to_string(cfg.q_max)}, {"n_max", std::to_string(cfg.cosine_n_max)},
                         {"checked", std::to_string(g.checked)}, {"failures", std::to_string(g.failures.size())}}));
    out.back().pass = out.back().pass && g.failures.empty();
    for (const auto& f : g.failures) out.push_back(f);
    return out;
}

std::vector<IdentityReport> kuznetsov_suite(const SuiteConfig& cfg) {
    std::vector<std::pair<double, double>> XT = {{8.0, 3.0}, {20.0, 5.0}};
    if (cfg.X > 0.0 && cfg.T > 0.0) XT = {{cfg.X, cfg.T}};
    const i64 Q = cfg.Q > 0 ? cfg.Q : 4000;
    const i64 N_max = cfg.N_max > 0 ? cfg.N_max : 400;
    std::vector<IdentityReport> out;
    for (const auto& [X, T] : XT)
        for (double s : {1.6, 1.75, 1.9}) out.push_back(kuznetsov_check(s, params_new(X, T, cfg.theta), Q, N_max, cfg.policy));
    return out;
}

std::vector<IdentityReport> exact_formula_suite(const SuiteConfig& cfg) {
    std::vector<std::array<double, 3>> XTN = {{10.0, 4.0, 10.0}, {30.0, 5.0, 15.0}};
    if (cfg.X > 0.0 && cfg.T > 0.0 && cfg.N > 0.0) XTN = {{cfg.X, cfg.T, cfg.N}};
    const i64 Q = cfg.Q > 0 ? cfg.Q : 10000;
    const i64 N_max = cfg.N_max > 0 ? cfg.N_max : 60;
    const double t_max = cfg.t_max > 0.0 ? cfg.t_max : 100.0;
    std::vector<IdentityReport> out;
    for (const auto& [X, T, N] : XTN)
        out.push_back(exact_formula_check(params_new(X, T, cfg.theta), bump_new(N), Q, N_max, t_max, cfg.policy));
    return out;
}

std::vector<IdentityReport> inequality_suite(const SuiteConfig&) {
    long samples = 0, violations = 0;
    double worst_margin = -INFINITY, worst_arctan = 0.0;
    long arctan_points = 0;
    for (double X : {4.0, 10.0, 1e2, 1e4})
        for (double T : {2.0, 10.0, 1e2}) {
            const auto p = params_new(X, T);
            const double top = 8 * std::abs(p.c);
            for (int i = 0; i < 200; ++i) {
                const double n = top * i / 199.0;
                for (int j = 0; j < 24; ++j) {
                    const double t = std::pow(10.0, -1.0 + 3.0 * j / 23.0);
                    for (double sg : {1.0, -1.0}) {
                        const auto r = arg_inequality_check(n, sg * t, p);
                        ++samples;
                        if (!r.pass) ++violations;
                        worst_margin = std::max(worst_margin, r.margin);
                    }
                }
                if (n > 2 * p.b) {
                    worst_arctan = std::max(worst_arctan, std::abs(arctan_addition_residual(n, p)));
                    ++arctan_points;
                }
            }
        }
    std::vector<IdentityReport> out;
    out.push_back(bound("arg-inequality", worst_margin, fixtures::arg_inequality_slack,
                        {{"samples", std::to_string(samples)}, {"violations", std::to_string(violations)}}));
    out.push_back(bound("arctan-addition", worst_arctan, fixtures::arctan_tol, {{"points", std::to_string(arctan_points)}}));
    return out;
}

std::vector<IdentityReport> testfun_suite(const SuiteConfig&) {
    std::vector<IdentityReport> out;
    const double tol = fixtures::closed_form_tol;
    {
        const auto p = params_new(10.0, 5.0);
        for (double t : {0.5, 1.0, 2.0, 3.0}) {
            const auto q = phi_hat_quadrature(t, p);
            auto r = compare("phi-hat", phi_hat_closed(t, p), q.value, tol, {{"X", "10"}, {"T", "5"}, {"t", num(t)}});
            r.pass = r.pass && q.converged;
            out.push_back(r);
        }
    }
    for (auto [X, T] : {std::pair{10.0, 5.0}, std::pair{4.0, 2.0}, std::pair{100.0, 20.0}}) {
        const auto p = params_new(X, T);
        const auto q = phi0_quadrature(p);
        auto r = compare("phi0", phi0_closed(p), q.value, fixtures::phi0_tol, {{"X", num(X)}, {"T", num(T)}});
        r.pass = r.pass && q.converged;
        out.push_back(r);
    }
    {
        const auto p = params_new(10.0, 5.0);
        for (double x : {0.5, 1.0, 3.0})
            out.push_back(compare("phi-B", phi_b(x, p), phi_b_definition(x, p), tol, {{"X", "10"}, {"T", "5"}, {"x", num(x)}}));
    }
    {
        const auto p = params_new(10.0, 4.0);
        auto psi = [&](double x) { return phi(x, p); };
        for (double n : {0.0, 1.0, 5.0})
            for (cplx s : {cplx(1.0), cplx(1.75), cplx(0.5, 3.0)}) {
                const auto q = psi_transform(psi, n, s, p.a, p.b);
                auto r = compare("capital-phi", capital_phi(n, s, p), q.value, tol,
                                 {{"X", "10"}, {"T", "4"}, {"n", num(n)}, {"s", num(s.real()) + "+" + num(s.imag()) + "i"}});
                r.pass = r.pass && q.converged;
                out.push_back(r);
            }
    }
    for (auto [X, T] : {std::pair{10.0, 4.0}, std::pair{100.0, 8.0}, std::pair{1e4, 30.0}}) {
        const auto I = capital_phi_one_integral(params_new(X, T));
        const double limit = fixtures::phi_one_integral_rel * I.scale;
        out.push_back(bound("phi-one-integral-beta", std::abs(I.beta_route), limit, {{"X", num(X)}, {"T", num(T)}}));
        out.push_back(bound("phi-one-integral-quadrature", std::abs(I.quadrature), limit, {{"X", num(X)}, {"T", num(T)}}));
    }
    return out;
}

std::vector<IdentityReport> lfun_suite(const SuiteConfig&) {
    std::vector<IdentityReport> out;
    for (i64 m : {5, 12, 21, 32, 45, 60}) {
        const auto o = script_l_series_oracle(2.5, m, 10000);
        const auto v = script_l(2.5, m);
        out.push_back(compare("script-l-decomposition", v.value, o.rho_form.value, fixtures::series_oracle_tol,
                              {{"m", std::to_string(m)}, {"s", "2.5"}, {"form", "rho"}}, v.tail_bound, o.rho_form.tail_bound));
        out.push_back(compare("script-l-decomposition", v.value, o.lambda_form.value, fixtures::series_oracle_tol,
                              {{"m", std::to_string(m)}, {"s", "2.5"}, {"form", "lambda"}}, v.tail_bound, o.lambda_form.tail_bound));
    }
    for (i64 n = 3; n <= 12; ++n)
        for (double V : {10.0, 100.0, 1000.0}) out.push_back(script_l_via_afe(n * n - 4, V));
    return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"cosine", "kuznetsov", "exact-formula", "inequality", "testfun", "lfun"};
    return names;
}

std::vector<IdentityReport> run_suite(const std::string& name, const SuiteConfig& cfg) {
    if (name == "all") {
        std::vector<IdentityReport> out;
        for (const auto& n : suite_names()) {
            auto part = run_suite(n, cfg);
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }
    if (name == "cosine") return cosine_suite(cfg);
    if (name == "kuznetsov") return kuznetsov_suite(cfg);
    if (name == "exact-formula") return exact_formula_suite(cfg);
    if (name == "inequality") return inequality_suite(cfg);
    if (name == "testfun") return testfun_suite(cfg);
    if (name == "lfun") return lfun_suite(cfg);
    throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace klsum
