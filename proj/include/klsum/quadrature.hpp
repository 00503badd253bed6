#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "klsum/parallel.hpp"

namespace klsum {

struct GaussLegendreRule {
    std::vector<double> nodes;    // on [-1, 1], increasing
    std::vector<double> weights;
};

// Cached n-point rule; thread safe.
const GaussLegendreRule& gauss_legendre_rule(int n);

template <class F>
auto gauss_legendre(F&& f, double a, double b, int order = 20) {
    const GaussLegendreRule& r = gauss_legendre_rule(order);
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    using T = decltype(f(a));
    T acc{};
    for (std::size_t i = 0; i < r.nodes.size(); ++i) acc += r.weights[i] * f(mid + half * r.nodes[i]);
    return acc * half;
}

template <class T>
struct QuadResult {
    T value{};
    double error = 0.0;  // estimate of the absolute error
    long evaluations = 0;
    bool converged = true;
};

// Composite rule on `panels` equal panels.
template <class F>
auto integrate_panels(F&& f, double a, double b, int panels, int order = 20) {
    using T = decltype(f(a));
    CompensatedSum<T> acc;
    const double h = (b - a) / panels;
    for (int k = 0; k < panels; ++k) acc.add(gauss_legendre(f, a + k * h, a + (k + 1) * h, order));
    return acc.value();
}

// Adaptive bisection comparing an order-n rule with its two halves.
template <class F>
auto integrate_adaptive(F&& f, double a, double b, double abs_tol, int max_depth = 30, int order = 16) {
    using T = decltype(f(a));
    QuadResult<T> out;
    std::function<T(double, double, T, int, double)> rec = [&](double lo, double hi, T whole, int depth, double tol) -> T {
        const double mid = 0.5 * (lo + hi);
        T left = gauss_legendre(f, lo, mid, order);
        T right = gauss_legendre(f, mid, hi, order);
        out.evaluations += 2L * order;
        const double diff = std::abs(left + right - whole);
        if (diff <= tol || depth >= max_depth) {
            if (diff > tol) out.converged = false;
            out.error += diff;
            return left + right;
        }
        return rec(lo, mid, left, depth + 1, 0.5 * tol) + rec(mid, hi, right, depth + 1, 0.5 * tol);
    };
    T whole = gauss_legendre(f, a, b, order);
    out.evaluations += order;
    out.value = rec(a, b, whole, 0, abs_tol);
    return out;
}

// Integral over (0, x0] on geometrically graded panels [x0 2^{-k-1}, x0 2^{-k}];
// handles integrable endpoint behaviour like x^alpha, alpha > -1.
template <class F>
auto integrate_graded_origin(F&& f, double x0, int levels = 60, int order = 20) {
    using T = decltype(f(x0));
    CompensatedSum<T> acc;
    double hi = x0;
    for (int k = 0; k < levels; ++k) {
        const double lo = 0.5 * hi;
        acc.add(gauss_legendre(f, lo, hi, order));
        hi = lo;
    }
    return acc.value();
}

// Integral over [a, inf) by panels of fixed width. Stops after `quiet` consecutive panels each
// contributing less than rel_tol of the running total, but never before x = min_x.
template <class F>
auto integrate_to_infinity(F&& f, double a, double width, double min_x, double rel_tol, double max_x,
                           int order = 20, int quiet = 3) {
    using T = decltype(f(a));
    QuadResult<T> out;
    CompensatedSum<T> acc;
    int small = 0;
    double x = a;
    double last = 0.0;
    while (true) {
        T panel = gauss_legendre(f, x, x + width, order);
        out.evaluations += order;
        acc.add(panel);
        x += width;
        last = std::abs(panel);
        const double scale = std::abs(acc.value());
        small = (last <= rel_tol * scale) ? small + 1 : 0;
        if (x >= min_x && small >= quiet) break;
        if (x >= max_x) {
            out.converged = false;
            break;
        }
    }
    out.value = acc.value();
    out.error = last;
    return out;
}

// Integral over [R, inf) of a function with algebraic decay, via x = R/u on u in (0, 1].
template <class F>
auto integrate_algebraic_tail(F&& f, double R, int levels = 60, int order = 20) {
    auto g = [&](double u) { return f(R / u) * (R / (u * u)); };
    return integrate_graded_origin(g, 1.0, levels, order);
}

}  // namespace klsum
