#include <chrono>
#include <cmath>
#include <numeric>

#include "../fft_util.hpp"
#include "gl3/expsums.hpp"

namespace gl3 {

namespace {

struct CStats {
    std::uint64_t checked = 0, violations = 0;
    double max_ratio = 0;
    i64 a = 0, b = 0;
    double oracle_diff = 0;
};

CStats scan_modulus(i64 c, bool with_oracle) {
    CStats st;
    auto fac = factorize(static_cast<u64>(c));
    const double tau_c = static_cast<double>(fac.tau());
    std::vector<u64> divs = fac.divisors();
    const std::size_t D = divs.size();
    // gcd(a, b, c) = gcd(gcd(a, c), gcd(b, c)); both are divisors of c
    std::vector<int> didx(static_cast<std::size_t>(c));
    for (i64 b = 0; b < c; ++b) {
        u64 g = std::gcd(static_cast<u64>(b), static_cast<u64>(c));
        didx[b] = static_cast<int>(std::lower_bound(divs.begin(), divs.end(), g) - divs.begin());
    }
    std::vector<double> bound2(D * D);
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j) {
            double g = static_cast<double>(std::gcd(divs[i], divs[j]));
            bound2[i * D + j] = tau_c * tau_c * g * static_cast<double>(c);
        }
    std::vector<i64> inv(static_cast<std::size_t>(c), -1);
    for (i64 y = 1; y < c; ++y)
        if (std::gcd(y, c) == 1) inv[y] = mod_inverse(y, c).value;
    if (c == 1) inv[0] = 0;
    std::vector<cplx> roots = unit_roots(c);

    detail::BackwardDft dft(static_cast<int>(c));
    cplx* in = dft.input();
    for (i64 a = 0; a < c; ++a) {
        // S(a,b;c) = sum_y e(a ybar / c) e(b y / c) over units y
        for (i64 y = 0; y < c; ++y)
            in[y] = inv[y] >= 0 ? roots[static_cast<std::size_t>(
                                      (static_cast<__int128>(a) * inv[y]) % c)]
                                : cplx(0, 0);
        dft.run();
        const cplx* out = dft.output();
        const std::size_t ia = static_cast<std::size_t>(didx[a]) * D;
        for (i64 b = 0; b < c; ++b) {
            double s2 = std::norm(out[b]);
            double bd2 = bound2[ia + didx[b]];
            ++st.checked;
            double ratio2 = s2 / bd2;
            if (ratio2 > (1 + 1e-9) * (1 + 1e-9)) ++st.violations;
            if (ratio2 > st.max_ratio) {
                st.max_ratio = ratio2;
                st.a = a;
                st.b = b;
            }
        }
        if (with_oracle) {
            for (i64 b = 0; b < c; ++b)
                st.oracle_diff = std::max(st.oracle_diff, std::abs(out[b] - kloosterman(a, b, c)));
        }
    }
    st.max_ratio = std::sqrt(st.max_ratio);
    return st;
}

}  // namespace

WeilScanReport weil_scan(i64 c_max, int threads, i64 oracle_c_max) {
    auto t0 = std::chrono::steady_clock::now();
    WeilScanReport rep;
    rep.c_max = c_max;
    rep.oracle_c_max = std::min(oracle_c_max, c_max);
    std::vector<CStats> stats(static_cast<std::size_t>(c_max + 1));
    int T = std::max(1, threads);
    // interleave moduli across workers: worker w takes c = w+1, w+1+T, ...
    parallel_for(static_cast<std::size_t>(T), T, [&](std::size_t b, std::size_t en, int) {
        for (std::size_t w = b; w < en; ++w)
            for (i64 c = static_cast<i64>(w) + 1; c <= c_max; c += T)
                stats[c] = scan_modulus(c, c <= rep.oracle_c_max);
    });
    for (i64 c = 1; c <= c_max; ++c) {
        const CStats& s = stats[c];
        rep.sums_checked += s.checked;
        rep.violations += s.violations;
        rep.oracle_max_diff = std::max(rep.oracle_max_diff, s.oracle_diff);
        if (s.max_ratio > rep.max_ratio) {
            rep.max_ratio = s.max_ratio;
            rep.worst_a = s.a;
            rep.worst_b = s.b;
            rep.worst_c = c;
        }
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace gl3
