#include "cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "config.hpp"
#include "klsum/experiments.hpp"
#include "klsum/fixtures.hpp"
#include "klsum/kloosterman.hpp"
#include "klsum/lfun.hpp"
#include "klsum/report.hpp"
#include "klsum/suites.hpp"

namespace klsum::cli {

namespace {

using nlohmann::json;

const std::vector<std::string> compute_targets = {"kloosterman-row", "rho-lambda", "script-l", "a1", "main-term", "spectral"};
const std::vector<std::string> experiment_names = {"scaling-a1", "scaling-main-term", "lambda-drift"};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool contains(const std::vector<std::string>& v, const std::string& s) { return std::find(v.begin(), v.end(), s) != v.end(); }

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
    return s;
}

ExecPolicy policy_of(const RunConfig& c) {
    ExecPolicy p;
    p.threads = c.threads;
    p.deterministic = c.deterministic;
    return p;
}

json envelope(const std::string& command, const std::string& name, const RunConfig& c) {
    return {{"command", command}, {"name", name}, {"fixtures_version", fixtures::version}, {"config", to_json(c)}};
}

std::string csv_preamble(const RunConfig& c) { return "# config " + to_json(c).dump() + "\n"; }

// Writes to --out/<stem>.<ext> when --out is set, otherwise to the stream.
void emit(const RunConfig& c, const std::string& stem, const std::string& ext, const std::string& body, std::ostream& out) {
    if (c.out.empty()) {
        out << body;
        return;
    }
    std::filesystem::create_directories(c.out);
    const auto path = std::filesystem::path(c.out) / (stem + "." + ext);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + path.string());
    f << body;
}

void emit_json(const RunConfig& c, const std::string& stem, const json& j, std::ostream& out) {
    emit(c, stem, "json", j.dump(2) + "\n", out);
}

TestParams params_of(const RunConfig& c, double X0, double T0) {
    try {
        return params_new(c.X > 0 ? c.X : X0, c.T > 0 ? c.T : T0, c.theta);
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
}

BumpSpec bump_of(const RunConfig& c, double N0) {
    const double N = c.N > 0 ? c.N : N0;
    if (N < 1.0) throw ConfigError("N must be at least 1");
    return bump_new(N);
}

int cmd_verify(const std::string& suite, const RunConfig& c, std::ostream& out, std::ostream& err) {
    if (suite != "all" && !contains(suite_names(), suite))
        throw UsageError("unknown suite '" + suite + "' (expected " + join(suite_names()) + ", all)");
    SuiteConfig sc;
    sc.X = c.X;
    sc.T = c.T;
    sc.N = c.N;
    sc.theta = c.theta;
    sc.Q = c.Q;
    sc.N_max = c.nmax;
    sc.t_max = c.tmax;
    sc.q_max = c.qmax;
    sc.cosine_n_max = c.ncos;
    sc.policy = policy_of(c);
    std::vector<IdentityReport> reports;
    try {
        reports = run_suite(suite, sc);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    bool pass = true;
    long failed = 0;
    for (const auto& r : reports)
        if (!r.pass) {
            pass = false;
            ++failed;
        }
    const std::string stem = "verify-" + suite;
    if (c.format == "csv") {
        std::string body = csv_preamble(c) + report_csv_header();
        for (const auto& r : reports) body += report_csv_row(r);
        emit(c, stem, "csv", body, out);
    } else {
        json j = envelope("verify", suite, c);
        j["reports"] = json::array();
        for (const auto& r : reports) j["reports"].push_back(to_json(r));
        j["pass"] = pass;
        emit_json(c, stem, j, out);
    }
    err << suite << ": " << reports.size() - failed << "/" << reports.size() << " checks passed\n";
    return pass ? 0 : 1;
}

std::string csv_line(const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + cells[i];
    return s + "\n";
}

// Emits a table as CSV or as a JSON array of row objects.
int emit_table(const RunConfig& c, const std::string& name, const std::vector<std::string>& header,
               const std::vector<std::vector<json>>& rows, std::ostream& out) {
    if (c.format == "csv") {
        std::string body = csv_preamble(c) + csv_line(header);
        for (const auto& row : rows) {
            std::vector<std::string> cells;
            for (const auto& v : row) cells.push_back(v.is_number_float() ? format_number(v.get<double>()) : v.is_string() ? v.get<std::string>() : v.dump());
            body += csv_line(cells);
        }
        emit(c, "compute-" + name, "csv", body, out);
    } else {
        json j = envelope("compute", name, c);
        j["rows"] = json::array();
        for (const auto& row : rows) {
            json o;
            for (std::size_t i = 0; i < header.size(); ++i) o[header[i]] = row[i];
            j["rows"].push_back(o);
        }
        emit_json(c, "compute-" + name, j, out);
    }
    return 0;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0, const RunConfig& c) {
    if (c.deterministic) return 0.0;
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

int cmd_compute(const std::string& target, const RunConfig& c, std::ostream& out) {
    if (!contains(compute_targets, target))
        throw UsageError("unknown target '" + target + "' (expected " + join(compute_targets) + ")");
    const auto policy = policy_of(c);
    if (target == "kloosterman-row") {
        if (c.Q < 1) throw ConfigError("kloosterman-row needs --Q >= 1");
        std::vector<std::vector<json>> rows;
        for (const auto& [q, S] : kloosterman_row(c.n, c.Q, policy)) rows.push_back({q, S});
        return emit_table(c, target, {"q", "S"}, rows, out);
    }
    if (target == "rho-lambda") {
        if (c.Q < 1) throw ConfigError("rho-lambda needs --Q >= 1");
        std::vector<std::vector<json>> rows;
        for (long long q = 1; q <= c.Q; ++q) rows.push_back({q, rho_fast(q, c.m), lambda_q(q, c.m)});
        return emit_table(c, target, {"q", "rho", "lambda"}, rows, out);
    }
    if (target == "script-l") {
        LValue v;
        try {
            v = script_l(cplx(c.s, c.sim), c.m);
        } catch (const std::exception& e) {
            throw ConfigError(e.what());
        }
        return emit_table(c, target, {"m", "s_re", "s_im", "Re", "Im", "tail", "method"},
                          {{c.m, c.s, c.sim, v.value.real(), v.value.imag(), v.tail_bound, to_string(v.method)}}, out);
    }
    if (target == "spectral") {
        if (c.eigenvalues.empty()) throw ConfigError("spectral needs --eigenvalues PATH");
        EigenvalueList ev;
        try {
            ev = load_eigenvalues(c.eigenvalues, c.sort);
        } catch (const std::exception& e) {
            throw ConfigError(e.what());
        }
        if (c.X < 1.0 || c.T <= 0.0) throw ConfigError("spectral needs --X >= 1 and --T > 0");
        const cplx S = spectral_sum(ev, c.X, c.T, c.weighted);
        long count = 0;
        for (std::size_t i = 0; i < ev.values.size(); ++i)
            if (ev.values[i] > 0.0 && ev.values[i] <= c.T) count += ev.multiplicity[i];
        if (c.format == "csv") return emit_table(c, target, {"X", "T", "count", "Re", "Im"}, {{c.X, c.T, count, S.real(), S.imag()}}, out);
        json j = envelope("compute", target, c);
        j["X"] = c.X;
        j["T"] = c.T;
        j["count"] = count;
        j["Re"] = S.real();
        j["Im"] = S.imag();
        emit_json(c, "compute-" + target, j, out);
        return 0;
    }
    // a1 and main-term share the grid row layout.
    const auto p = params_of(c, 10.0, 4.0);
    GridValue g{p.X, p.T, 0.0, {}, 0.0, 0.0};
    const auto t0 = std::chrono::steady_clock::now();
    if (target == "a1") {
        const auto spec = bump_of(c, 10.0);
        const auto v = a1_sum(p, spec, c.Q > 0 ? c.Q : 5000, false, policy);
        g.N = spec.N;
        g.value = v.value;
        g.tail = v.tail_bound;
    } else {
        const auto v = main_term(p, c.nmax > 0 ? c.nmax : 60, true, policy);
        g.value = v.value;
        g.tail = v.tail_bound;
    }
    g.runtime_ms = elapsed_ms(t0, c);
    if (c.format == "csv") {
        emit(c, "compute-" + target, "csv", csv_preamble(c) + grid_csv({g}, !c.deterministic), out);
        return 0;
    }
    return emit_table(c, target, {"X", "T", "N", "Re", "Im", "tail", "runtime_ms"},
                      {{g.X, g.T, g.N, g.value.real(), g.value.imag(), g.tail, g.runtime_ms}}, out);
}

int cmd_experiment(const std::string& name, const RunConfig& c, std::ostream& out, std::ostream& err) {
    if (!contains(experiment_names, name))
        throw UsageError("unknown experiment '" + name + "' (expected " + join(experiment_names) + ")");
    const auto policy = policy_of(c);
    json j = envelope("experiment", name, c);
    std::string csv;
    bool pass = true;
    if (name == "lambda-drift") {
        std::vector<i64> Qs;
        const long long top = c.Q > 0 ? c.Q : 200;
        for (long long q = 10; q <= top; q += 10) Qs.push_back(q);
        if (Qs.size() < 3) throw ConfigError("lambda-drift needs --Q >= 30");
        DriftFit fit;
        try {
            fit = lambda_drift_fit(Qs, c.z, policy);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        pass = fit.exponent <= fixtures::drift_exponent_max;
        j["exponent"] = fit.exponent;
        j["residual"] = fit.residual;
        j["bound"] = fixtures::drift_exponent_max;
        j["points"] = json::array();
        csv = "Q,drift\n";
        for (const auto& [q, d] : fit.points) {
            j["points"].push_back({{"Q", q}, {"drift", d}});
            csv += std::to_string(q) + "," + format_number(d) + "\n";
        }
        err << "lambda-drift exponent " << fit.exponent << " (bound " << fixtures::drift_exponent_max << ")\n";
    } else {
        const auto xs = c.grid_x.empty() ? std::vector<double>{10.0, 100.0, 1000.0} : c.grid_x;
        const auto ts = c.grid_t.empty() ? std::vector<double>{2.0, 6.0, 20.0} : c.grid_t;
        std::vector<GridPoint> grid;
        for (double X : xs)
            for (double T : ts) grid.push_back({X, T, c.N > 0 ? c.N : 50.0});
        ScalingOptions opt;
        if (c.Q > 0) opt.Q = c.Q;
        if (c.nmax > 0) opt.N_max = c.nmax;
        opt.theta = c.theta;
        opt.policy = policy;
        ScalingReport rep;
        try {
            rep = scaling_fit(name == "scaling-a1" ? ScalingQuantity::a1 : ScalingQuantity::main_term, grid, opt);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        if (c.deterministic)
            for (auto& g : rep.fit.grid) g.runtime_ms = 0.0;
        pass = rep.fit.e_X <= rep.envelope.e_X + fixtures::exponent_slack;
        j["report"] = klsum::to_json(rep, !c.deterministic);
        j["slack"] = fixtures::exponent_slack;
        csv = grid_csv(rep.fit.grid, !c.deterministic);
        err << name << " e_X " << rep.fit.e_X << " e_T " << rep.fit.e_T << " against envelope e_X " << rep.envelope.e_X << " ("
            << rep.label << ")\n";
    }
    j["pass"] = pass;
    const std::string stem = "experiment-" + name;
    if (!c.out.empty()) {
        emit_json(c, stem, j, out);
        emit(c, stem, "csv", csv_preamble(c) + csv, out);
    } else if (c.format == "csv") {
        out << csv_preamble(c) << csv;
    } else {
        out << j.dump(2) << "\n";
    }
    return pass ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Kloosterman sums, generalized L-functions and the identities linking them"};
    app.require_subcommand(1);
    std::map<std::string, std::string> flag_values;
    std::string config_path;
    std::string positional;
    bool deterministic = false, sort = false, weighted = false;

    struct Flag {
        const char* name;
        const char* key;
        const char* help;
    };
    const std::vector<Flag> flags = {
        {"--X", "X", "X parameter of the test function"},
        {"--T", "T", "T parameter of the test function"},
        {"--N", "N", "bump scale N"},
        {"--theta", "theta", "subconvexity exponent in [0, 1/4]"},
        {"--Q", "Q", "modulus cutoff"},
        {"--nmax", "nmax", "n cutoff of the spectral-side sums"},
        {"--tmax", "tmax", "height cutoff of line integrals"},
        {"--V", "V", "smoothing length"},
        {"--qmax", "qmax", "largest q in the cosine suite"},
        {"--ncos", "ncos", "largest n in the cosine suite"},
        {"--n", "n", "n for kloosterman-row"},
        {"--m", "m", "discriminant m for rho-lambda and script-l"},
        {"--s", "s", "real part of s for script-l"},
        {"--sim", "sim", "imaginary part of s for script-l"},
        {"--z", "z", "cutoff z for lambda-drift"},
        {"--grid-x", "grid_x", "comma separated X values of a scaling grid"},
        {"--grid-t", "grid_t", "comma separated T values of a scaling grid"},
        {"--eigenvalues", "eigenvalues", "eigenvalue file"},
        {"--out", "out", "directory for report files"},
        {"--threads", "threads", "worker threads"},
        {"--format", "format", "csv or json"},
    };

    auto add_common = [&](CLI::App* sub, const char* what) {
        sub->add_option("name", positional, what)->required();
        for (const auto& f : flags) sub->add_option(f.name, flag_values[f.key], f.help);
        sub->add_option("--config", config_path, "TOML config file (flags override it)");
        sub->add_flag("--deterministic", deterministic, "fixed reduction order, no timings");
        sub->add_flag("--sort", sort, "sort and merge an unsorted eigenvalue file");
        sub->add_flag("--weighted", weighted, "weight the spectral sum by t_j");
    };
    auto* verify = app.add_subcommand("verify", "run an identity suite");
    add_common(verify, ("suite: " + join(suite_names()) + ", all").c_str());
    auto* compute = app.add_subcommand("compute", "compute one quantity");
    add_common(compute, ("target: " + join(compute_targets)).c_str());
    auto* experiment = app.add_subcommand("experiment", "run a scaling experiment");
    add_common(experiment, ("experiment: " + join(experiment_names)).c_str());

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, e2;
        const int code = app.exit(e, o, e2);
        out << o.str();
        err << e2.str();
        return code == 0 ? 0 : 2;
    }

    CLI::App* sub = verify->parsed() ? verify : compute->parsed() ? compute : experiment;
    try {
        RunConfig cfg;
        if (!config_path.empty()) apply_toml_file(cfg, config_path);
        for (const auto& f : flags)
            if (sub->count(f.name) > 0) set_key(cfg, f.key, flag_values[f.key]);
        if (deterministic) cfg.deterministic = true;
        if (sort) cfg.sort = true;
        if (weighted) cfg.weighted = true;
        if (sub == verify) return cmd_verify(positional, cfg, out, err);
        if (sub == compute) return cmd_compute(positional, cfg, out);
        return cmd_experiment(positional, cfg, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n\n" << sub->help();
        return 2;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace klsum::cli
