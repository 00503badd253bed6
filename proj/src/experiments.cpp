#include "klsum/experiments.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "klsum/lfun.hpp"
#include "klsum/quadrature.hpp"
#include "klsum/special.hpp"

namespace klsum {

namespace {

using std::numbers::pi;

double span(const std::vector<GridValue>& g, double GridValue::*field) {
    double lo = g.front().*field, hi = lo;
    for (const auto& v : g) {
        lo = std::min(lo, v.*field);
        hi = std::max(hi, v.*field);
    }
    return hi / lo;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

TruncatedValue a1_sum(const TestParams& p, const BumpSpec& spec, i64 Q, bool a1_normalization, const ExecPolicy& policy) {
    TruncatedValue v = kloosterman_bump_sum(p, spec, Q, policy);
    const double scale = (a1_normalization ? pi * pi / 12.0 : 1.0) / spec.N;
    v.value *= scale;
    v.tail_bound *= scale;
    return v;
}

double weil_envelope(double X, double T, double N) {
    return std::sqrt(N) * std::pow(X, 0.25) * std::pow(T, 1.5) * std::log(N * X);
}

double a1_envelope(double X, double T, double N, double theta) {
    const double lead = std::max(std::pow(X, 0.25 + theta / 2) * std::pow(T, 1.5), std::pow(X, theta / 2) * T * T);
    const double lg = std::log(X * T);
    return lead * lg * lg + std::pow(X, 0.25 + theta) * std::pow(T, 1.5) / std::sqrt(N) * (1.0 + T / std::sqrt(X));
}

double main_term_envelope(double X, double T, double theta) {
    const double lead = std::max(std::pow(X, 0.25 + theta / 2) * std::pow(T, 1.5), std::pow(X, theta / 2) * T * T);
    const double lg = std::log(X);
    return lead * lg * lg;
}

TruncatedValue main_term(const TestParams& p, i64 N_max, bool mean_tail, const ExecPolicy& policy) {
    return script_l_phi_sum(1.0, p, 3, N_max, mean_tail, policy);
}

double default_v(const TestParams& p) { return std::pow(p.X, p.theta) * (1.0 + std::sqrt(p.X) / p.T); }

SvSplit sv_main_split(const TestParams& p, double V, i64 N_max, double t_max, const ExecPolicy& policy) {
    if (!(V >= 1.0)) throw std::invalid_argument("sv_main_split: V must be >= 1");
    if (N_max < 3) throw std::invalid_argument("sv_main_split: N_max must be >= 3");
    if (!(t_max > 0.0)) throw std::invalid_argument("sv_main_split: t_max must be positive");
    const std::size_t count = static_cast<std::size_t>(N_max - 2);
    std::vector<cplx> Phi(count);
    std::vector<Discriminant> disc(count);
    for (std::size_t k = 0; k < count; ++k) {
        const i64 n = static_cast<i64>(k) + 3;
        Phi[k] = capital_phi(static_cast<double>(n), 1.0, p);
        disc[k] = make_discriminant(n * n - 4);
    }

    std::vector<TruncatedValue> sv(count);
    parallel_for(static_cast<std::int64_t>(count), policy, [&](std::int64_t k) {
        const i64 n = k + 3;
        sv[k] = s_v(n * n - 4, V);
    });

    // The integrand at -t is the conjugate of the one at t, so (2 pi i)^{-1} int ds = pi^{-1} Re int_0^{t_max} dt.
    const auto& rule = gauss_legendre_rule(20);
    const int panels = static_cast<int>(std::ceil(t_max));
    const int per = static_cast<int>(rule.nodes.size());
    const double width = t_max / panels;
    const i64 nodes = static_cast<i64>(panels) * per + 1;  // the last entry is t = t_max itself
    const i64 top = N_max * N_max;
    std::vector<std::vector<cplx>> vals(static_cast<std::size_t>(nodes));
    const double logV = std::log(V);
    parallel_for(nodes, policy, [&](std::int64_t idx) {
        const double t = idx == nodes - 1 ? t_max
                                          : width * (static_cast<double>(idx / per) + 0.5 * (rule.nodes[idx % per] + 1.0));
        const cplx s(-0.5, t);
        const LFunctionEvaluator ev(1.0 + s, top);
        const cplx weight = std::exp(s * logV) * gamma(s);
        auto& row = vals[static_cast<std::size_t>(idx)];
        row.resize(count);
        for (std::size_t k = 0; k < count; ++k) row[k] = ev.script_l(disc[k]) * weight;
    });

    CompensatedSum<cplx> sv_acc, int_acc;
    double tail = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
        CompensatedSum<double> I;
        for (i64 idx = 0; idx + 1 < nodes; ++idx)
            I.add(0.5 * width * rule.weights[idx % per] * vals[static_cast<std::size_t>(idx)][k].real());
        const double integral = I.value() / pi;
        sv_acc.add(Phi[k] * sv[k].value.real());
        int_acc.add(-Phi[k] * integral);
        // Gamma(-1/2 + it) decays like e^{-pi t / 2}: the rest of the line is about edge * (2 / pi) on each side.
        const double edge = std::abs(vals[static_cast<std::size_t>(nodes - 1)][k]);
        tail += std::abs(Phi[k]) * (sv[k].tail_bound + 2.0 * edge * (2.0 / pi) / (2 * pi));
    }
    SvSplit out;
    out.sv_part = sv_acc.value();
    out.integral_part = int_acc.value();
    out.tail = tail;
    return out;
}

ScalingFit fit_exponents(const std::vector<GridValue>& grid) {
    if (grid.size() < 6) throw std::invalid_argument("scaling fit: need at least 6 grid points");
    if (span(grid, &GridValue::X) < 10.0 - 1e-9 || span(grid, &GridValue::T) < 10.0 - 1e-9)
        throw std::invalid_argument("scaling fit: X and T must each span a decade");
    const auto n = static_cast<Eigen::Index>(grid.size());
    Eigen::MatrixXd A(n, 3);
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& g = grid[static_cast<std::size_t>(i)];
        const double mag = std::abs(g.value);
        if (!(mag > 0.0) || !std::isfinite(mag)) throw std::invalid_argument("scaling fit: values must be nonzero and finite");
        A(i, 0) = std::log(g.X);
        A(i, 1) = std::log(g.T);
        A(i, 2) = 1.0;
        b(i) = std::log(mag);
    }
    const auto qr = A.colPivHouseholderQr();
    if (qr.rank() < 3) throw std::invalid_argument("scaling fit: degenerate grid");
    const Eigen::VectorXd x = qr.solve(b);
    ScalingFit fit;
    fit.grid = grid;
    fit.e_X = x(0);
    fit.e_T = x(1);
    fit.constant = x(2);
    fit.residual = std::sqrt((A * x - b).squaredNorm() / static_cast<double>(n));
    return fit;
}

ScalingReport scaling_fit(ScalingQuantity quantity, const std::vector<GridPoint>& grid, const ScalingOptions& opt) {
    std::vector<GridValue> values, env;
    std::map<double, DiagonalRows> rows;  // per N, shared across the grid
    for (const auto& g : grid) {
        const auto t0 = std::chrono::steady_clock::now();
        const TestParams p = params_new(g.X, g.T, opt.theta);
        TruncatedValue v;
        if (quantity == ScalingQuantity::a1) {
            const BumpSpec spec = bump_new(g.N);
            auto it = rows.find(g.N);
            if (it == rows.end()) {
                const auto [lo, hi] = bump_support(spec);
                it = rows.emplace(g.N, diagonal_rows(lo, hi, opt.Q, opt.policy)).first;
            }
            v = kloosterman_bump_sum(p, spec, opt.Q, it->second, opt.policy);
            v.value /= g.N;
            v.tail_bound /= g.N;
        } else {
            v = main_term(p, opt.N_max, true, opt.policy);
        }
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        values.push_back({g.X, g.T, g.N, v.value, v.tail_bound, ms});
        const double e = quantity == ScalingQuantity::a1 ? a1_envelope(g.X, g.T, g.N, opt.theta)
                                                         : main_term_envelope(g.X, g.T, opt.theta);
        env.push_back({g.X, g.T, g.N, e, 0.0, 0.0});
    }
    ScalingReport r;
    r.fit = fit_exponents(values);
    r.envelope = fit_exponents(env);
    return r;
}

EigenvalueList parse_eigenvalues(const std::string& text, const std::string& source, bool sort) {
    EigenvalueList ev;
    ev.source = source;
    std::istringstream in(text);
    std::string line;
    long lineno = 0;
    auto fail = [&](const std::string& why) {
        throw std::runtime_error(source + ":" + std::to_string(lineno) + ": " + why);
    };
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string a, b, extra;
        fields >> a >> b >> extra;
        if (!extra.empty()) fail("expected a value and an optional multiplicity");
        double t = 0.0;
        const auto r = std::from_chars(a.data(), a.data() + a.size(), t);
        if (r.ec != std::errc() || r.ptr != a.data() + a.size()) fail("malformed value '" + a + "'");
        if (!(t > 0.0) || !std::isfinite(t)) fail("value must be positive");
        long mult = 1;
        if (!b.empty()) {
            const auto rm = std::from_chars(b.data(), b.data() + b.size(), mult);
            if (rm.ec != std::errc() || rm.ptr != b.data() + b.size() || mult < 1) fail("malformed multiplicity '" + b + "'");
        }
        if (!sort && !ev.values.empty() && !(t > ev.values.back()))
            fail("values must be strictly increasing (use a multiplicity column for repeats, or sort)");
        ev.values.push_back(t);
        ev.multiplicity.push_back(mult);
    }
    if (sort) {
        std::map<double, long> merged;
        for (std::size_t i = 0; i < ev.values.size(); ++i) merged[ev.values[i]] += ev.multiplicity[i];
        ev.values.clear();
        ev.multiplicity.clear();
        for (const auto& [t, m] : merged) {
            ev.values.push_back(t);
            ev.multiplicity.push_back(m);
        }
    }
    return ev;
}

EigenvalueList load_eigenvalues(const std::string& path, bool sort) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error(path + ": cannot open");
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_eigenvalues(buf.str(), path, sort);
}

cplx spectral_sum(const EigenvalueList& ev, double X, double T, bool weighted) {
    if (!(X >= 1.0) || !(T > 0.0)) throw std::invalid_argument("spectral_sum: needs X >= 1 and T > 0");
    const double lx = std::log(X);
    CompensatedSum<cplx> acc;
    for (std::size_t i = 0; i < ev.values.size(); ++i) {
        const double t = ev.values[i];
        if (t > T) break;
        acc.add(static_cast<double>(ev.multiplicity[i]) * (weighted ? t : 1.0) * std::polar(1.0, t * lx));
    }
    return acc.value();
}

cplx smoothed_spectral_sum(const EigenvalueList& ev, const TestParams& p) {
    CompensatedSum<cplx> acc;
    for (std::size_t i = 0; i < ev.values.size(); ++i)
        acc.add(static_cast<double>(ev.multiplicity[i]) * phi_hat_closed(ev.values[i], p));
    return acc.value();
}

DriftFit lambda_drift_fit(const std::vector<i64>& Qs, double z, const ExecPolicy& policy) {
    if (Qs.size() < 2) throw std::invalid_argument("lambda_drift_fit: need at least two Q values");
    DriftFit out;
    const auto n = static_cast<Eigen::Index>(Qs.size());
    Eigen::MatrixXd A(n, 2);
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const i64 Q = Qs[static_cast<std::size_t>(i)];
        const double d = lambda_drift_aggregate(Q, z, policy);
        if (!(std::abs(d) > 0.0)) throw std::runtime_error("lambda_drift_fit: zero aggregate drift at Q = " + std::to_string(Q));
        out.points.emplace_back(Q, d);
        A(i, 0) = std::log(static_cast<double>(Q));
        A(i, 1) = 1.0;
        b(i) = std::log(std::abs(d));
    }
    const auto qr = A.colPivHouseholderQr();
    if (qr.rank() < 2) throw std::invalid_argument("lambda_drift_fit: degenerate Q list");
    const Eigen::VectorXd x = qr.solve(b);
    out.exponent = x(0);
    out.residual = std::sqrt((A * x - b).squaredNorm() / static_cast<double>(n));
    return out;
}

}  // namespace klsum
