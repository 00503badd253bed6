#include <charconv>
#include <cmath>
#include <cstring>
#include <random>

#include "doctest.h"
#include "klsum/report.hpp"

using namespace klsum;

TEST_CASE("format_number round-trips") {
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(-0.5) == "-0.5");
    CHECK(format_number(0.1) == "0.1");
    std::mt19937_64 rng(3);
    for (int i = 0; i < 10000; ++i) {
        double x;
        const std::uint64_t bits = rng();
        std::memcpy(&x, &bits, sizeof x);
        if (!std::isfinite(x)) continue;
        const std::string s = format_number(x);
        double y = 0.0;
        std::from_chars(s.data(), s.data() + s.size(), y);
        CHECK(y == x);
    }
}

TEST_CASE("identity report serialization") {
    IdentityReport r;
    r.name = "demo";
    r.lhs = cplx(1.0, 2.0);
    r.rhs = cplx(1.0, 2.5);
    r.tol_abs = 1.0;
    r.params = {{"q", "7"}, {"note", "a,b"}};
    finalize(r);
    const auto j = to_json(r);
    CHECK(j["name"] == "demo");
    CHECK(j["pass"] == true);
    CHECK(j["abs_err"].get<double>() == doctest::Approx(0.5));
    CHECK(j["lhs"]["re"].get<double>() == 1.0);
    CHECK(j["params"]["q"] == "7");

    CHECK(report_csv_header() == "name,params,abs_err,rel_err,pass\n");
    const std::string row = report_csv_row(r);
    CHECK(row.rfind("demo,\"q=7;note=a,b\",0.5,", 0) == 0);
    CHECK(row.substr(row.size() - 5) == "true\n");
}

TEST_CASE("grid csv drops timings on request") {
    std::vector<GridValue> g = {{10.0, 4.0, 50.0, cplx(1.5, -2.0), 0.25, 123.4}};
    CHECK(grid_csv(g) == "X,T,N,Re,Im,tail,runtime_ms\n10,4,50,1.5,-2,0.25,123.4\n");
    CHECK(grid_csv(g, false) == "X,T,N,Re,Im,tail,runtime_ms\n10,4,50,1.5,-2,0.25,0\n");

    ScalingReport rep;
    rep.fit.grid = g;
    CHECK(to_json(rep, false)["fit"]["grid"][0]["runtime_ms"].get<double>() == 0.0);
    CHECK(to_json(rep)["label"] == "consistency, not verification");
}
