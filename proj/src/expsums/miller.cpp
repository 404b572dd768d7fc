#include <chrono>
#include <cmath>
#include <random>

#include "gl3/expsums.hpp"

namespace gl3 {

namespace {

// distance from alpha to the nearest a/q with q <= 10
double major_arc_distance(double alpha) {
    double best = 1.0;
    for (int q = 1; q <= 10; ++q) {
        double a = std::round(alpha * q);
        best = std::min(best, std::abs(alpha - a / q));
    }
    return best;
}

// |sum_{n <= X} lambda(n) e(alpha n)| at each X of the grid
std::vector<double> partial_sums(const std::vector<double>& lam, double alpha,
                                 const std::vector<i64>& grid) {
    std::vector<double> out;
    out.reserve(grid.size());
    cplx s = 0;
    cplx step = e(alpha), z = 1;
    std::size_t gi = 0;
    i64 last = grid.back();
    for (i64 n = 1; n <= last; ++n) {
        if ((n & 1023) == 0)
            z = e(std::fmod(alpha * static_cast<double>(n), 1.0));  // re-anchor the recurrence
        else
            z *= step;
        s += lam[n] * z;
        while (gi < grid.size() && grid[gi] == n) {
            out.push_back(std::abs(s));
            ++gi;
        }
    }
    return out;
}

}  // namespace

MillerReport miller_scan(i64 X_max, int alpha_samples, const CoefficientProvider& provider,
                         std::uint64_t seed, int threads, i64 X_min, int per_decade) {
    auto t0 = std::chrono::steady_clock::now();
    MillerReport rep;
    double lo = std::log10(static_cast<double>(X_min)), hi = std::log10(static_cast<double>(X_max));
    int steps = static_cast<int>(std::round((hi - lo) * per_decade));
    for (int k = 0; k <= steps; ++k) {
        i64 X = static_cast<i64>(std::llround(std::pow(10.0, lo + (hi - lo) * k / std::max(1, steps))));
        if (rep.X.empty() || X > rep.X.back()) rep.X.push_back(X);
    }
    std::vector<double> lam = provider.table_1n(static_cast<u64>(X_max));

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    while (static_cast<int>(rep.alphas.size()) < alpha_samples) {
        double a = U(rng);
        if (major_arc_distance(a) >= 1e-3) rep.alphas.push_back(a);
    }
    std::vector<std::vector<double>> sums(rep.alphas.size());
    parallel_items(rep.alphas.size(), threads,
                   [&](std::size_t i) { sums[i] = partial_sums(lam, rep.alphas[i], rep.X); });
    rep.max_abs.assign(rep.X.size(), 0.0);
    for (auto& s : sums)
        for (std::size_t k = 0; k < s.size(); ++k) rep.max_abs[k] = std::max(rep.max_abs[k], s[k]);

    for (int q = 1; q <= 10; ++q)
        for (int a = 0; a < q; ++a) {
            if (std::gcd(a, q) != 1) continue;
            rep.rational_points.emplace_back(std::to_string(a) + "/" + std::to_string(q),
                                             partial_sums(lam, static_cast<double>(a) / q, rep.X));
        }

    // least-squares slope of log max_abs against log X
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(rep.X.size());
    for (std::size_t k = 0; k < rep.X.size(); ++k) {
        double x = std::log(static_cast<double>(rep.X[k])), y = std::log(rep.max_abs[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    rep.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace gl3
