// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "klsum/experiments.hpp"
#include "klsum/fixtures.hpp"
#include "klsum/identities.hpp"
#include "klsum/kloosterman.hpp"
#include "klsum/lfun.hpp"
#include "klsum/suites.hpp"

using namespace klsum;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int failures = 0;

void criterion(int id, const char* name, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %2d %-22s %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
}

bool all_pass(const std::vector<IdentityReport>& rs) {
    for (const auto& r : rs)
        if (!r.pass) return false;
    return true;
}

double max_abs_err(const std::vector<IdentityReport>& rs) {
    double w = 0.0;
    for (const auto& r : rs) w = std::max(w, r.abs_err);
    return w;
}

std::string param(const IdentityReport& r, const std::string& key) {
    for (const auto& [k, v] : r.params)
        if (k == key) return v;
    return "";
}

Outcome cosine() {
    ExecPolicy one;
    one.threads = 1;
    const auto t0 = std::chrono::steady_clock::now();
    const auto g = cosine_kloosterman_grid(300, 30, one);
    const double t = seconds_since(t0);
    return {g.failures.empty() && g.worst_scaled_err <= fixtures::cosine_tol_per_q && t <= fixtures::cosine_runtime_s,
            fmt("q<=300 n<=30: %ld checks, %zu failures, worst |err|/q %.2g (limit %.0e), %.1f s single-thread (limit %.0f s)", g.checked,
                g.failures.size(), g.worst_scaled_err, fixtures::cosine_tol_per_q, t, fixtures::cosine_runtime_s)};
}

Outcome weil() {
    long checked = 0, violations = 0, asym = 0;
    auto check = [&](i64 m, i64 n, i64 c) {
        const double s = kloosterman_direct(m, n, c);
        ++checked;
        if (std::abs(s) > weil_bound(m, n, c) * (1 + fixtures::weil_rel_slack)) ++violations;
        return s;
    };
    for (i64 c = 1; c <= 500; ++c)
        for (i64 m = 0; m <= 20; ++m)
            for (i64 n = 0; n <= 20; ++n) {
                const double s = check(m, n, c);
                const double tol = 1e-9 * std::max(1.0, static_cast<double>(c));
                if (std::abs(s - kloosterman_direct(n, m, c)) > tol || std::abs(s - kloosterman_direct(-m, -n, c)) > tol) ++asym;
            }
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<i64> cd(1, 10000), md(-1000000, 1000000);
    for (int i = 0; i < 10000; ++i) check(md(rng), md(rng), cd(rng));
    return {violations == 0 && asym == 0,
            fmt("c<=500 m,n<=20 exhaustive + 10^4 random c<=10^4: %ld sums, %ld Weil violations, %ld symmetry failures", checked, violations,
                asym)};
}

Outcome fast_paths() {
    long k_bad = 0, k_checked = 0;
    double worst = 0.0;
    for (i64 c = 1; c <= 2000; ++c) {
        const auto f = factorize(c);
        const double scale = std::max(1.0, std::sqrt(static_cast<double>(c)) * static_cast<double>(tau0(c)));
        for (i64 m = 0; m <= 30; ++m)
            for (i64 n = m; n <= 30; ++n) {
                const double e = std::abs(kloosterman_fast(m, n, f) - kloosterman_direct(m, n, c)) / scale;
                worst = std::max(worst, e);
                ++k_checked;
                if (e > fixtures::fast_path_tol) ++k_bad;
            }
    }
    long r_bad = 0, r_checked = 0;
    for (i64 q = 1; q <= 2000; ++q) {
        const auto table = rho_direct_table(q);
        const auto f = factorize(q);
        for (i64 n = -50; n <= 2500; ++n) {
            ++r_checked;
            if (rho_fast(f, n) != table[static_cast<std::size_t>(mod(n, 4 * q))]) ++r_bad;
        }
    }
    return {k_bad == 0 && r_bad == 0,
            fmt("kloosterman c<=2000 0<=m<=n<=30: %ld pairs, %ld mismatches (worst %.2g scaled, limit %.0e); rho q<=2000 n in [-50,2500]: "
                "%ld pairs, %ld mismatches",
                k_checked, k_bad, worst, fixtures::fast_path_tol, r_checked, r_bad)};
}

Outcome decomposition() {
    const auto rs = run_suite("lfun", {});
    std::vector<IdentityReport> d;
    for (const auto& r : rs)
        if (r.name == "script-l-decomposition") d.push_back(r);
    return {d.size() == 12 && all_pass(d),
            fmt("s=2.5, m in {5,12,21,32,45,60}, rho and lambda forms: %zu comparisons, max |diff| %.2g (limit tails + %.0e)", d.size(),
                max_abs_err(d), fixtures::series_oracle_tol)};
}

Outcome kuznetsov() {
    SuiteConfig cfg;
    cfg.policy.threads = 4;
    const auto t0 = std::chrono::steady_clock::now();
    const auto rs = run_suite("kuznetsov", cfg);
    const double t = seconds_since(t0);
    double worst = 0.0;
    for (const auto& r : rs) worst = std::max(worst, r.rel_err);
    return {rs.size() == 6 && all_pass(rs) && t <= fixtures::kuznetsov_runtime_s,
            fmt("s in {1.6,1.75,1.9} x (X,T) in {(8,3),(20,5)}: %zu/6 within tails + %.0e relative (worst rel %.2g), %.0f s with 4 workers "
                "(limit %.0f s)",
                static_cast<std::size_t>(std::count_if(rs.begin(), rs.end(), [](const auto& r) { return r.pass; })),
                fixtures::kuznetsov_tol_rel, worst, t, fixtures::kuznetsov_runtime_s)};
}

Outcome exact_formula() {
    const auto p = params_new(10.0, 4.0);
    const auto spec = bump_new(10.0);
    auto rel = [&](i64 Q, i64 N_max, double t_max) { return exact_formula_check(p, spec, Q, N_max, t_max).rel_err; };
    const double a = exact_formula_check(p, spec, 10000, 60, 100.0).rel_err;
    const double b = exact_formula_check(params_new(30.0, 5.0), bump_new(15.0), 10000, 60, 100.0).rel_err;
    const bool points = a <= fixtures::exact_formula_tol_rel && b <= fixtures::exact_formula_tol_rel;

    const double q300 = rel(300, 60, 100.0), q1000 = rel(1000, 60, 100.0), q3000 = rel(3000, 60, 100.0);
    const double n30 = rel(3000, 30, 100.0);
    const double t20 = rel(3000, 60, 20.0), t40 = rel(3000, 60, 40.0);
    const bool ladders = q300 > q1000 && q1000 > q3000 && n30 > q3000 && t20 > t40 && t40 > q3000;
    return {points && ladders,
            fmt("rel err (10,4,10) %.2g, (30,5,15) %.2g (limit %.0e); ladders at (10,4,10): Q 300/1000/3000 -> %.2g/%.2g/%.2g, N_max 30/60 "
                "-> %.2g/%.2g, t_max 20/40/100 -> %.2g/%.2g/%.2g%s",
                a, b, fixtures::exact_formula_tol_rel, q300, q1000, q3000, n30, q3000, t20, t40, q3000,
                ladders ? "" : " (not monotone)")};
}

Outcome inequality() {
    const auto rs = run_suite("inequality", {});
    const auto samples = std::stol(param(rs.at(0), "samples"));
    const auto violations = std::stol(param(rs.at(0), "violations"));
    return {all_pass(rs) && samples >= 100000 && violations == 0,
            fmt("%ld samples, both signs, %ld violations beyond %.0e, worst margin %.2g; arctan addition worst %.2g (limit %.0e)", samples,
                violations, fixtures::arg_inequality_slack, rs[0].lhs.real(), rs[1].lhs.real(), fixtures::arctan_tol)};
}

Outcome test_functions() {
    const auto rs = run_suite("testfun", {});
    double closed = 0.0, integral = 0.0;
    long n_closed = 0, n_integral = 0;
    bool ok = true;
    for (const auto& r : rs) {
        ok = ok && r.pass;
        if (r.name.rfind("phi-one-integral", 0) == 0) {
            integral = std::max(integral, r.lhs.real() / r.rhs.real() * fixtures::phi_one_integral_rel);
            ++n_integral;
        } else {
            closed = std::max(closed, r.abs_err);
            ++n_closed;
            ok = ok && r.abs_err <= std::max(fixtures::closed_form_tol, r.tol_abs);
        }
    }
    return {ok, fmt("%ld closed-form comparisons (phi-hat, phi0, phi-B, Phi(n,s)), worst |diff| %.2g (limit %.0e); %ld integrals of Phi(x,1), "
                    "worst %.2g x scale (limit %.0e)",
                    n_closed, closed, fixtures::closed_form_tol, n_integral, integral, fixtures::phi_one_integral_rel)};
}

Outcome afe() {
    double worst = 0.0, spread = 0.0;
    bool ok = true;
    for (i64 n = 3; n <= 12; ++n) {
        std::vector<cplx> recovered;
        for (double V : {10.0, 100.0, 1000.0}) {
            const auto r = script_l_via_afe(n * n - 4, V);
            worst = std::max(worst, r.abs_err);
            ok = ok && r.abs_err <= fixtures::afe_tol_abs;
            recovered.push_back(r.rhs);
        }
        for (const auto& x : recovered)
            for (const auto& y : recovered) spread = std::max(spread, std::abs(x - y));
    }
    ok = ok && spread <= 2 * fixtures::afe_tol_abs;
    return {ok, fmt("n in 3..12, V in {10,100,1000}: worst residual %.2g (limit %.0e), spread across V %.2g (limit %.0e)", worst,
                    fixtures::afe_tol_abs, spread, 2 * fixtures::afe_tol_abs)};
}

Outcome drift() {
    std::vector<i64> Qs;
    for (i64 q = 10; q <= 200; q += 10) Qs.push_back(q);
    const auto f = lambda_drift_fit(Qs, 1000.0);
    return {f.exponent <= fixtures::drift_exponent_max,
            fmt("Q = 10..200 step 10, z = 1000: fitted exponent %.3f (limit %.1f), log-fit RMS %.2g", f.exponent,
                fixtures::drift_exponent_max, f.residual)};
}

Outcome scaling() {
    std::vector<GridPoint> grid;
    for (double X : {10.0, 100.0, 1000.0})
        for (double T : {2.0, 6.0, 20.0}) grid.push_back({X, T, 50.0});
    ScalingOptions opt;
    opt.Q = fixtures::a1_scaling_Q;
    opt.theta = 1.0 / 6.0;
    const auto r = scaling_fit(ScalingQuantity::a1, grid, opt);
    std::vector<GridValue> env;
    for (const auto& g : grid) env.push_back({g.X, g.T, g.N, a1_envelope(g.X, g.T, g.N, 0.25), 0.0, 0.0});
    const auto env4 = fit_exponents(env);
    const double s = fixtures::exponent_slack;
    const bool ok = r.fit.e_X <= r.envelope.e_X + s && r.fit.e_T <= r.envelope.e_T + s && r.fit.e_X <= env4.e_X + s &&
                    r.fit.e_T <= env4.e_T + s;
    return {ok, fmt("%s: a1 grid X in {10,100,1000}, T in {2,6,20}, N=50, Q=%ld: e_X %.3f, e_T %.3f; envelope theta=1/6 (%.3f, %.3f), "
                    "theta=1/4 (%.3f, %.3f), slack %.1f",
                    r.label.c_str(), fixtures::a1_scaling_Q, r.fit.e_X, r.fit.e_T, r.envelope.e_X, r.envelope.e_T, env4.e_X, env4.e_T, s)};
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Outcome determinism() {
    const std::vector<std::vector<std::string>> commands = {
        {"verify", "cosine"},
        {"verify", "inequality"},
        {"verify", "lfun"},
        {"compute", "a1", "--X", "10", "--T", "4", "--N", "10", "--Q", "2000", "--format", "csv"},
        {"compute", "main-term", "--X", "10", "--T", "4", "--nmax", "60"},
        {"experiment", "lambda-drift"},
        {"experiment", "scaling-a1", "--Q", "500"},
    };
    std::vector<std::string> bundles;
    long files = 0;
    for (const char* threads : {"1", "4"}) {
        const auto dir = std::filesystem::temp_directory_path() / (std::string("klsum-acceptance-") + threads);
        std::filesystem::remove_all(dir);
        std::string bundle;
        const std::vector<std::string> extra = {"--deterministic", "--threads", threads, "--out", dir.string()};
        for (auto args : commands) {
            args.insert(args.end(), extra.begin(), extra.end());
            std::ostringstream out, err;
            if (cli::run(args, out, err) == 2) throw std::runtime_error("usage error: " + err.str());
        }
        std::vector<std::filesystem::path> paths;
        for (const auto& e : std::filesystem::directory_iterator(dir)) paths.push_back(e.path());
        std::sort(paths.begin(), paths.end());
        for (const auto& p : paths) bundle += p.filename().string() + "\n" + read_file(p);
        files = static_cast<long>(paths.size());
        bundles.push_back(bundle);
    }
    return {bundles[0] == bundles[1] && files > 0,
            fmt("%ld report files from verify/compute/experiment runs at --threads 1 and 4: %s", files,
                bundles[0] == bundles[1] ? "byte-identical" : "differ")};
}

}  // namespace

int main() {
    criterion(1, "cosine-kloosterman", cosine);
    criterion(2, "weil-bound", weil);
    criterion(3, "fast-path", fast_paths);
    criterion(4, "decomposition", decomposition);
    criterion(5, "kuznetsov", kuznetsov);
    criterion(6, "exact-formula", exact_formula);
    criterion(7, "arg-inequality", inequality);
    criterion(8, "test-functions", test_functions);
    criterion(9, "afe", afe);
    criterion(10, "lambda-drift", drift);
    criterion(11, "a1-scaling", scaling);
    criterion(12, "determinism", determinism);
    std::printf("%d of 12 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
