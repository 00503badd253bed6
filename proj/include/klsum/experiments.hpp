#pragma once

#include <string>
#include <vector>

#include "klsum/identities.hpp"
#include "klsum/parallel.hpp"
#include "klsum/testfun.hpp"
#include "klsum/types.hpp"

namespace klsum {

// (1/N) sum_n h(n) sum_{q <= Q} S(n, n; q) q^{-1} phi(4 pi n / q). With a1_normalization the value is scaled
// by pi^2 / 12, the A1 bookkeeping.
TruncatedValue a1_sum(const TestParams& p, const BumpSpec& spec, i64 Q, bool a1_normalization = false,
                      const ExecPolicy& policy = {});

// N^{1/2} X^{1/4} T^{3/2} log(N X)
double weil_envelope(double X, double T, double N);
// max(X^{1/4+theta/2} T^{3/2}, X^{theta/2} T^2) log^2(XT) + X^{1/4+theta} T^{3/2} N^{-1/2} (1 + T/X^{1/2})
double a1_envelope(double X, double T, double N, double theta);
// max(X^{1/4+theta/2} T^{3/2}, X^{theta/2} T^2) log^2 X
double main_term_envelope(double X, double T, double theta);

// sum_{3 <= n <= N_max} script-L_{n^2-4}(1) Phi(n, 1). With mean_tail the terms beyond N_max are added from the
// mean value of script-L (which is 1 at s = 1) against the exact Phi tail.
TruncatedValue main_term(const TestParams& p, i64 N_max, bool mean_tail = true, const ExecPolicy& policy = {});

struct SvSplit {
    cplx sv_part{};        // sum_{3 <= n <= N_max} Phi(n, 1) S_V(n^2 - 4)
    cplx integral_part{};  // - sum_n Phi(n, 1) (2 pi i)^{-1} int_{(-1/2)} script-L_{n^2-4}(1 + s) V^s Gamma(s) ds
    double tail = 0.0;     // S_V truncation plus the line integral cut at t_max
};
SvSplit sv_main_split(const TestParams& p, double V, i64 N_max, double t_max = 40.0, const ExecPolicy& policy = {});
// X^theta (1 + X^{1/2} / T)
double default_v(const TestParams& p);

struct GridValue {
    double X = 0.0, T = 0.0, N = 0.0;
    cplx value{};
    double tail = 0.0;
    double runtime_ms = 0.0;
};

struct ScalingFit {
    std::vector<GridValue> grid;
    double e_X = 0.0, e_T = 0.0, constant = 0.0;
    double residual = 0.0;  // RMS of the log-space fit
};

// Least squares log|value| = e_X log X + e_T log T + constant. Needs >= 6 points whose X and T each span a
// decade and nonzero values.
ScalingFit fit_exponents(const std::vector<GridValue>& grid);

enum class ScalingQuantity { a1, main_term };

struct ScalingOptions {
    i64 Q = 2000;        // a1
    i64 N_max = 60;      // main_term
    double theta = 1.0 / 6.0;
    ExecPolicy policy{};
};

struct GridPoint {
    double X = 0.0, T = 0.0, N = 0.0;
};

struct ScalingReport {
    ScalingFit fit;
    ScalingFit envelope;  // the same fit applied to the envelope values on the grid
    std::string label = "consistency, not verification";
};
ScalingReport scaling_fit(ScalingQuantity quantity, const std::vector<GridPoint>& grid, const ScalingOptions& opt);

struct EigenvalueList {
    std::vector<double> values;
    std::vector<long> multiplicity;  // one per value
    std::string source;
};
// One positive decimal per line with an optional positive integer multiplicity, '#' starts a comment.
// Throws std::runtime_error naming the line on malformed input or on a decreasing sequence unless sort is set.
EigenvalueList load_eigenvalues(const std::string& path, bool sort = false);
EigenvalueList parse_eigenvalues(const std::string& text, const std::string& source, bool sort = false);

// sum_{0 < t_j <= T} X^{i t_j}, or with weighted, sum t_j X^{i t_j}, multiplicities included.
cplx spectral_sum(const EigenvalueList& ev, double X, double T, bool weighted = false);
// sum_j phi_hat_closed(t_j) over the whole list.
cplx smoothed_spectral_sum(const EigenvalueList& ev, const TestParams& p);

// Fitted exponent of |lambda_drift_aggregate(Q, z)| against Q over the given Q values.
struct DriftFit {
    std::vector<std::pair<i64, double>> points;
    double exponent = 0.0;
    double residual = 0.0;
};
DriftFit lambda_drift_fit(const std::vector<i64>& Qs, double z, const ExecPolicy& policy = {});

}  // namespace klsum
