#include "klsum/report.hpp"

#include <charconv>
#include <cmath>

namespace klsum {

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

nlohmann::json to_json(cplx z) { return nlohmann::json{{"re", z.real()}, {"im", z.imag()}}; }

nlohmann::json to_json(const TruncatedValue& v) {
    return {{"value", to_json(v.value)}, {"tail_bound", v.tail_bound}, {"terms_used", v.terms_used}, {"rigorous", v.rigorous}};
}

nlohmann::json to_json(const IdentityReport& r) {
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    return {{"name", r.name},       {"lhs", to_json(r.lhs)},         {"rhs", to_json(r.rhs)},
            {"abs_err", r.abs_err}, {"rel_err", r.rel_err},          {"lhs_tail", r.lhs_tail},
            {"rhs_tail", r.rhs_tail}, {"tol_abs", r.tol_abs},        {"tol_rel", r.tol_rel},
            {"params", params},     {"pass", r.pass}};
}

nlohmann::json to_json(const ScalingReport& r, bool timings) {
    auto fit = [&](const ScalingFit& f) {
        nlohmann::json grid = nlohmann::json::array();
        for (const auto& g : f.grid)
            grid.push_back({{"X", g.X}, {"T", g.T}, {"N", g.N}, {"value", to_json(g.value)}, {"tail", g.tail},
                            {"runtime_ms", timings ? g.runtime_ms : 0.0}});
        return nlohmann::json{{"e_X", f.e_X}, {"e_T", f.e_T}, {"constant", f.constant}, {"residual", f.residual}, {"grid", grid}};
    };
    return {{"label", r.label}, {"fit", fit(r.fit)}, {"envelope", fit(r.envelope)}};
}

std::string report_csv_header() { return "name,params,abs_err,rel_err,pass\n"; }

std::string report_csv_row(const IdentityReport& r) {
    std::string params;
    for (const auto& [k, v] : r.params) {
        if (!params.empty()) params += ';';
        params += k + "=" + v;
    }
    return csv_field(r.name) + "," + csv_field(params) + "," + format_number(r.abs_err) + "," + format_number(r.rel_err) + "," +
           (r.pass ? "true" : "false") + "\n";
}

std::string grid_csv(const std::vector<GridValue>& grid, bool timings) {
    std::string out = "X,T,N,Re,Im,tail,runtime_ms\n";
    for (const auto& g : grid)
        out += format_number(g.X) + "," + format_number(g.T) + "," + format_number(g.N) + "," + format_number(g.value.real()) +
               "," + format_number(g.value.imag()) + "," + format_number(g.tail) + "," +
               format_number(timings ? g.runtime_ms : 0.0) + "\n";
    return out;
}

}  // namespace klsum
