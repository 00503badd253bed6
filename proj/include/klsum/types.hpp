#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace klsum {

using cplx = std::complex<double>;

// Raised when a function is evaluated at one of its poles.
class pole_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct TruncatedValue {
    cplx value{};
    double tail_bound = 0.0;
    long terms_used = 0;
    bool rigorous = true;  // false when tail_bound is an empirical estimate
};

enum class LMethod { decomposition, dirichlet_series, afe };

struct LValue {
    cplx s{};
    long long m = 0;
    cplx value{};
    LMethod method = LMethod::decomposition;
    double tail_bound = 0.0;
};

const char* to_string(LMethod m);

struct IdentityReport {
    std::string name;
    cplx lhs{};
    cplx rhs{};
    double abs_err = 0.0;
    double rel_err = 0.0;
    double lhs_tail = 0.0;
    double rhs_tail = 0.0;
    double tol_abs = 0.0;
    double tol_rel = 0.0;
    std::vector<std::pair<std::string, std::string>> params;
    bool pass = false;
};

// Fills abs_err, rel_err and pass from lhs, rhs, tails and tolerances:
// pass iff abs_err <= tol_abs + tol_rel * |lhs| + lhs_tail + rhs_tail.
void finalize(IdentityReport& r);

}  // namespace klsum
