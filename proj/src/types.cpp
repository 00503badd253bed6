#include "klsum/types.hpp"

#include <cmath>

namespace klsum {

const char* to_string(LMethod m) {
    switch (m) {
        case LMethod::decomposition: return "decomposition";
        case LMethod::dirichlet_series: return "dirichlet-series";
        case LMethod::afe: return "afe";
    }
    return "unknown";
}

void finalize(IdentityReport& r) {
    r.abs_err = std::abs(r.lhs - r.rhs);
    const double scale = std::abs(r.lhs);
    r.rel_err = scale > 0.0 ? r.abs_err / scale : r.abs_err;
    r.pass = std::isfinite(r.abs_err) && r.abs_err <= r.tol_abs + r.tol_rel * scale + r.lhs_tail + r.rhs_tail;
}

}  // namespace klsum
