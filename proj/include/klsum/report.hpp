#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "klsum/experiments.hpp"
#include "klsum/types.hpp"

namespace klsum {

// Shortest round-trip decimal form, so equal values always print the same bytes.
std::string format_number(double x);

nlohmann::json to_json(cplx z);
nlohmann::json to_json(const TruncatedValue& v);
nlohmann::json to_json(const IdentityReport& r);
// runtime_ms is written as 0 when timings is false.
nlohmann::json to_json(const ScalingReport& r, bool timings = true);

// name,params,abs_err,rel_err,pass
std::string report_csv_header();
std::string report_csv_row(const IdentityReport& r);
// X,T,N,Re,Im,tail,runtime_ms
std::string grid_csv(const std::vector<GridValue>& grid, bool timings = true);

}  // namespace klsum
