#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <thread>
#include <vector>

namespace gl3 {

using cplx = std::complex<double>;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// e(x) = exp(2 pi i x), reduced mod 1 first
inline cplx e(double x) {
    double f = x - std::floor(x);
    return {std::cos(two_pi * f), std::sin(two_pi * f)};
}

// e(num/den) with exact reduction of the numerator
inline cplx e_frac(std::int64_t num, std::int64_t den) {
    std::int64_t r = num % den;
    if (r < 0) r += den;
    double f = static_cast<double>(r) / static_cast<double>(den);
    return {std::cos(two_pi * f), std::sin(two_pi * f)};
}

// Table of e(k/m) for k in [0, m)
std::vector<cplx> unit_roots(std::int64_t m);

// Splits [0, n) into contiguous chunks, one per worker. Chunk boundaries
// depend only on n and the worker count; callers aggregate per-chunk results
// in index order so the output does not depend on scheduling.
template <class F>
void parallel_for(std::size_t n, int threads, F&& fn) {
    int T = std::max(1, threads);
    if (T == 1 || n < 2) {
        if (n) fn(std::size_t{0}, n, 0);
        return;
    }
    T = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(T), n));
    std::vector<std::thread> pool;
    for (int w = 0; w < T; ++w) {
        std::size_t b = n * w / T, en = n * (w + 1) / T;
        pool.emplace_back([&, b, en, w] { fn(b, en, w); });
    }
    for (auto& th : pool) th.join();
}

// Dynamic scheduling over independent items; fn(i) writes only slot i.
template <class F>
void parallel_items(std::size_t n, int threads, F&& fn) {
    parallel_for(n, threads, [&](std::size_t b, std::size_t en, int) {
        for (std::size_t i = b; i < en; ++i) fn(i);
    });
}

int default_threads();

}  // namespace gl3
