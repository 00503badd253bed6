#pragma once

#include <string>
#include <vector>

#include "klsum/arith.hpp"
#include "klsum/parallel.hpp"
#include "klsum/types.hpp"

namespace klsum {

// Zero (or empty) fields fall back to each suite's fixture values.
struct SuiteConfig {
    double X = 0.0, T = 0.0, N = 0.0;
    double theta = 1.0 / 6.0;
    i64 Q = 0;
    i64 N_max = 0;
    double t_max = 0.0;
    i64 q_max = 300;          // cosine
    i64 cosine_n_max = 30;    // cosine
    ExecPolicy policy{};
};

// cosine, kuznetsov, exact-formula, inequality, testfun, lfun
const std::vector<std::string>& suite_names();
// "all" runs every suite in order. Throws std::invalid_argument for an unknown name.
std::vector<IdentityReport> run_suite(const std::string& name, const SuiteConfig& cfg);

}  // namespace klsum
