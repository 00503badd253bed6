#include "config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace klsum::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    T v{};
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
        throw ConfigError("invalid value '" + text + "' for " + key);
    return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    if (t == "true" || t == "1") return true;
    if (t == "false" || t == "0") return false;
    throw ConfigError("invalid value '" + text + "' for " + key);
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_number<double>(key, item));
    if (out.empty()) throw ConfigError("empty list for " + key);
    return out;
}

void require(bool ok, const std::string& key, const std::string& why) {
    if (!ok) throw ConfigError(key + " " + why);
}

}  // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = {"X",    "T",      "N",     "theta", "Q",           "nmax",          "tmax",
                                                  "V",    "qmax",   "ncos",  "n",     "m",           "s",             "sim",
                                                  "z",    "grid_x", "grid_t", "eigenvalues", "out", "threads", "deterministic",
                                                  "sort", "weighted", "format"};
    return keys;
}

void set_key(RunConfig& c, const std::string& key, const std::string& value) {
    if (key == "X") c.X = parse_number<double>(key, value);
    else if (key == "T") c.T = parse_number<double>(key, value);
    else if (key == "N") c.N = parse_number<double>(key, value);
    else if (key == "theta") {
        c.theta = parse_number<double>(key, value);
        require(c.theta >= 0.0 && c.theta <= 0.25, key, "must lie in [0, 1/4]");
    } else if (key == "Q") c.Q = parse_number<long long>(key, value);
    else if (key == "nmax") c.nmax = parse_number<long long>(key, value);
    else if (key == "tmax") c.tmax = parse_number<double>(key, value);
    else if (key == "V") c.V = parse_number<double>(key, value);
    else if (key == "qmax") c.qmax = parse_number<long long>(key, value);
    else if (key == "ncos") c.ncos = parse_number<long long>(key, value);
    else if (key == "n") c.n = parse_number<long long>(key, value);
    else if (key == "m") c.m = parse_number<long long>(key, value);
    else if (key == "s") c.s = parse_number<double>(key, value);
    else if (key == "sim") c.sim = parse_number<double>(key, value);
    else if (key == "z") c.z = parse_number<double>(key, value);
    else if (key == "grid_x") c.grid_x = parse_list(key, value);
    else if (key == "grid_t") c.grid_t = parse_list(key, value);
    else if (key == "eigenvalues") c.eigenvalues = value;
    else if (key == "out") c.out = value;
    else if (key == "threads") {
        c.threads = parse_number<int>(key, value);
        require(c.threads >= 1, key, "must be at least 1");
    } else if (key == "deterministic") c.deterministic = parse_bool(key, value);
    else if (key == "sort") c.sort = parse_bool(key, value);
    else if (key == "weighted") c.weighted = parse_bool(key, value);
    else if (key == "format") {
        require(value == "csv" || value == "json", key, "must be csv or json");
        c.format = value;
    } else
        throw ConfigError("unknown key '" + key + "'");
    for (const auto* v : {&c.Q, &c.nmax}) require(*v >= 0, key, "must be non-negative");
    require(c.qmax >= 1 && c.ncos >= 0, key, "out of range");
}

void apply_toml(RunConfig& cfg, const std::string& text, const std::string& source) {
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string where = source + ":" + std::to_string(line_no) + ": ";
        std::string line = raw;
        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') quoted = !quoted;
            if (line[i] == '#' && !quoted) {
                line.resize(i);
                break;
            }
        }
        line = trim(line);
        if (line.empty() || line.front() == '[') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(where + "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        else if (value.size() >= 2 && value.front() == '[' && value.back() == ']')
            value = value.substr(1, value.size() - 2);
        try {
            set_key(cfg, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError(where + e.what());
        }
    }
}

void apply_toml_file(RunConfig& cfg, const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    apply_toml(cfg, ss.str(), path);
}

nlohmann::json to_json(const RunConfig& c) {
    nlohmann::json j = {{"X", c.X},
                        {"T", c.T},
                        {"N", c.N},
                        {"theta", c.theta},
                        {"Q", c.Q},
                        {"nmax", c.nmax},
                        {"tmax", c.tmax},
                        {"V", c.V},
                        {"qmax", c.qmax},
                        {"ncos", c.ncos},
                        {"n", c.n},
                        {"m", c.m},
                        {"s", c.s},
                        {"sim", c.sim},
                        {"z", c.z},
                        {"grid_x", c.grid_x},
                        {"grid_t", c.grid_t},
                        {"eigenvalues", c.eigenvalues},
                        {"deterministic", c.deterministic},
                        {"sort", c.sort},
                        {"weighted", c.weighted},
                        {"format", c.format}};
    if (!c.deterministic) j["threads"] = c.threads;
    return j;
}

}  // namespace klsum::cli
