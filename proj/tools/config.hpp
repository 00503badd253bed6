#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace klsum::cli {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Zero means "use the command's default".
struct RunConfig {
    double X = 0.0, T = 0.0, N = 0.0;
    double theta = 1.0 / 6.0;
    long long Q = 0;
    long long nmax = 0;
    double tmax = 0.0;
    double V = 0.0;
    long long qmax = 300;
    long long ncos = 30;
    long long n = 1;
    long long m = 5;
    double s = 1.0, sim = 0.0;
    double z = 1000.0;
    std::vector<double> grid_x, grid_t;
    std::string eigenvalues;
    std::string out;
    int threads = 1;
    bool deterministic = false;
    bool sort = false;
    bool weighted = false;
    std::string format = "json";
};

const std::vector<std::string>& config_keys();
// Sets one key from its text form. Lists are comma separated.
void set_key(RunConfig& cfg, const std::string& key, const std::string& value);

// Applies "key = value" lines: numbers, true/false, "strings" and [a, b] arrays of numbers.
// Blank lines, '#' comments and [section] headers are skipped. Errors name source:line.
void apply_toml(RunConfig& cfg, const std::string& text, const std::string& source);
void apply_toml_file(RunConfig& cfg, const std::string& path);

// The resolved configuration. threads is left out under deterministic, where it cannot change the output.
nlohmann::json to_json(const RunConfig& cfg);

}  // namespace klsum::cli
