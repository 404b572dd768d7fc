#include <chrono>
#include <cmath>
#include <numeric>
#include <random>

#include "../fft_util.hpp"
#include "gl3/errors.hpp"
#include "gl3/expsums.hpp"

namespace gl3 {

namespace {

i64 gcd3(i64 a, i64 b, i64 c) { return std::gcd(std::gcd(std::abs(a), std::abs(b)), std::abs(c)); }

// S(a, 1; s) for a mod s
std::vector<cplx> kloosterman_column(i64 s) {
    std::vector<cplx> k(static_cast<std::size_t>(s));
    // S(a,1;s) = S(1,a;s): read it off a single row
    std::vector<cplx> row = kloosterman_row(1, s);
    for (i64 a = 0; a < s; ++a) k[a] = row[a];
    return k;
}

}  // namespace

cplx correlation_sum(const CorrelationParams& p) {
    if (p.s1 < 1 || p.s2 < 1) throw DomainError("correlation_sum: s1, s2 must be positive");
    i64 q = std::lcm(p.s1, p.s2);
    cplx s = 0;
    for (i64 x = 0; x < q; ++x) {
        cplx a = kloosterman(mod(p.t1 * x, p.s1), 1, p.s1);
        cplx b = kloosterman(mod(p.t2 * x, p.s2), 1, p.s2);
        s += a * b * e_frac(mod(p.n, q) * x % q, q);
    }
    return s;
}

std::vector<cplx> correlation_sum_all_n(i64 s1, i64 s2, i64 t1, i64 t2) {
    i64 q = std::lcm(s1, s2);
    auto k1 = kloosterman_column(s1);
    auto k2 = kloosterman_column(s2);
    detail::BackwardDft dft(static_cast<int>(q));
    cplx* in = dft.input();
    for (i64 x = 0; x < q; ++x) in[x] = k1[mod(t1 * x, s1)] * k2[mod(t2 * x, s2)];
    dft.run();
    return std::vector<cplx>(dft.output(), dft.output() + q);
}

i64 correlation_delta(const CorrelationParams& p) {
    i64 g = std::gcd(p.s1, p.s2);
    i64 w1 = p.s1 / g, w2 = p.s2 / g;
    return checked_mul(checked_mul(w2, w2), p.t1) - checked_mul(checked_mul(w1, w1), p.t2);
}

double correlation_bound_base(const CorrelationParams& p) {
    i64 q = std::lcm(p.s1, p.s2);
    i64 g_all = std::gcd(gcd3(p.n, p.s1, p.s2), std::abs(correlation_delta(p)));
    i64 g_n = gcd3(p.n, p.s1, p.s2);
    return std::sqrt(static_cast<double>(p.s1) * p.s2 * q) * static_cast<double>(g_all) /
           std::sqrt(static_cast<double>(g_n));
}

CorrelationScanReport correlation_scan(i64 s_max, int t_samples, std::uint64_t seed, int threads) {
    auto t0 = std::chrono::steady_clock::now();
    CorrelationScanReport rep;
    rep.s_max = s_max;
    std::vector<std::vector<cplx>> col(static_cast<std::size_t>(s_max + 1));
    for (i64 s = 1; s <= s_max; ++s) col[s] = kloosterman_column(s);

    // case list is fixed up front so that the scan does not depend on threading
    struct Case {
        CorrelationParams p;
    };
    std::vector<Case> cases;
    std::mt19937_64 rng(seed);
    auto random_unit = [&](i64 s) {
        if (s == 1) return i64{0};
        std::uniform_int_distribution<i64> d(1, s - 1);
        for (;;) {
            i64 t = d(rng);
            if (std::gcd(t, s) == 1) return t;
        }
    };
    for (i64 s1 = 1; s1 <= s_max; ++s1) {
        for (i64 s2 = 1; s2 <= s_max; ++s2) {
            i64 g = std::gcd(s1, s2);
            i64 w1 = s1 / g, w2 = s2 / g;
            // Delta = 0 case: t_i proportional to w_i^2, when these are units
            if (std::gcd(w1, s1) == 1 && std::gcd(w2, s2) == 1)
                cases.push_back({{s1, s2, mod(w1 * w1, s1), mod(w2 * w2, s2), 0}});
            cases.push_back({{s1, s2, s1 == 1 ? 0 : 1, s2 == 1 ? 0 : 1, 0}});
            for (int k = 0; k < t_samples; ++k)
                cases.push_back({{s1, s2, random_unit(s1), random_unit(s2), 0}});
        }
    }
    struct Partial {
        double c0 = 0;
        CorrelationParams worst;
        std::uint64_t values = 0, trivial_viol = 0;
    };
    int T = std::max(1, threads);
    std::vector<Partial> parts(static_cast<std::size_t>(T));
    parallel_for(cases.size(), T, [&](std::size_t b, std::size_t en, int w) {
        Partial& pt = parts[w];
        for (std::size_t i = b; i < en; ++i) {
            const CorrelationParams& cp = cases[i].p;
            i64 q = std::lcm(cp.s1, cp.s2);
            detail::BackwardDft dft(static_cast<int>(q));
            cplx* in = dft.input();
            for (i64 x = 0; x < q; ++x)
                in[x] = col[cp.s1][mod(cp.t1 * x, cp.s1)] * col[cp.s2][mod(cp.t2 * x, cp.s2)];
            dft.run();
            int om = omega(static_cast<u64>(q));
            for (i64 n = 0; n < q; ++n) {
                CorrelationParams p = cp;
                p.n = n;
                double v = std::abs(dft.output()[n]);
                double base = correlation_bound_base(p);
                ++pt.values;
                if (v <= 1e-9 * base) continue;
                double ratio = v / base;
                if (om == 0) {
                    if (ratio > 1 + 1e-9) ++pt.trivial_viol;
                    continue;
                }
                double c = std::log2(ratio) / om;
                if (c > pt.c0) {
                    pt.c0 = c;
                    pt.worst = p;
                }
            }
        }
    });
    rep.cases = cases.size();
    for (auto& pt : parts) {
        rep.values += pt.values;
        rep.trivial_violations += pt.trivial_viol;
        if (pt.c0 > rep.c0) {
            rep.c0 = pt.c0;
            rep.worst = pt.worst;
        }
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace gl3
