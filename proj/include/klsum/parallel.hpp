#pragma once

#include <algorithm>
#include <atomic>
#include <complex>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace klsum {

// Neumaier-compensated accumulator for double and std::complex<double>.
template <class T>
class CompensatedSum;

template <>
class CompensatedSum<double> {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    CompensatedSum& operator+=(double x) {
        add(x);
        return *this;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

template <>
class CompensatedSum<std::complex<double>> {
public:
    void add(std::complex<double> z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    CompensatedSum& operator+=(std::complex<double> z) {
        add(z);
        return *this;
    }
    std::complex<double> value() const { return {re_.value(), im_.value()}; }

private:
    CompensatedSum<double> re_, im_;
};

struct ExecPolicy {
    int threads = 1;
    // Fixed chunking and in-order combination: results do not depend on the thread count.
    bool deterministic = true;
};

// Calls body(i) for i in [0, n); iterations must be independent.
template <class F>
void parallel_for(std::int64_t n, const ExecPolicy& policy, F&& body) {
    const int workers = static_cast<int>(std::clamp<std::int64_t>(policy.threads, 1, std::max<std::int64_t>(n, 1)));
    if (workers <= 1) {
        for (std::int64_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&] {
        try {
            for (std::int64_t i = next++; i < n; i = next++) body(i);
        } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            next = n;
        }
    };
    {
        std::vector<std::jthread> pool;
        for (int w = 1; w < workers; ++w) pool.emplace_back(run);
        run();
    }
    if (error) std::rethrow_exception(error);
}

// Sums chunk(begin, end) over a partition of [0, n).
// Deterministic mode uses chunk boundaries that depend only on n and combines partials in order;
// otherwise partials are combined as workers finish.
template <class T, class ChunkFn>
T parallel_sum(std::int64_t n, const ExecPolicy& policy, ChunkFn&& chunk) {
    if (n <= 0) return T{};
    if (policy.threads <= 1 && !policy.deterministic) return chunk(std::int64_t{0}, n);
    const std::int64_t chunks = policy.deterministic ? std::min<std::int64_t>(n, 256)
                                                     : std::min<std::int64_t>(n, 4 * std::max(policy.threads, 1));
    std::vector<T> partial(static_cast<std::size_t>(chunks));
    if (policy.deterministic) {
        parallel_for(chunks, policy, [&](std::int64_t c) {
            partial[c] = chunk(n * c / chunks, n * (c + 1) / chunks);
        });
        CompensatedSum<T> total;
        for (const T& v : partial) total.add(v);
        return total.value();
    }
    std::mutex m;
    T total{};
    parallel_for(chunks, policy, [&](std::int64_t c) {
        T v = chunk(n * c / chunks, n * (c + 1) / chunks);
        std::lock_guard lock(m);
        total += v;
    });
    return total;
}

}  // namespace klsum
