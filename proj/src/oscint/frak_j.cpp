#include <cmath>
#include <limits>
#include <random>

#include "gl3/arith.hpp"
#include "gl3/errors.hpp"
#include "gl3/oscint.hpp"

namespace gl3 {

namespace {

constexpr double pi = std::numbers::pi;

// sqrt(1 + z y) - 1 without cancellation
double root_minus_one(double z, double y) { return z * y / (1 + std::sqrt(1 + z * y)); }

}  // namespace

double frakJ_z(const FrakJTriple& tr, std::int64_t M, double t, double N) {
    double M2 = static_cast<double>(M) * static_cast<double>(M);
    return 16 * pi * pi * static_cast<double>(tr.r) * N * static_cast<double>(tr.p) /
           (M2 * t * t * static_cast<double>(tr.l));
}

double frakJ_stationary_point(double z, double y) {
    if (z == 0) return two_pi * y;
    return 4 * pi * y / (1 + std::sqrt(1 + z * y));
}

double frakJ_phi(double z1, double z2, double y) {
    return std::log(root_minus_one(z1, y) / root_minus_one(z2, y)) + std::sqrt(1 + z1 * y) -
           std::sqrt(1 + z2 * y);
}

double frakJ_phi_derivative(double z1, double z2, double y) {
    return (z1 - z2) / (2 * (std::sqrt(1 + z1 * y) + std::sqrt(1 + z2 * y)));
}

FrakJResult frak_J(const FrakJParams& P, double abs_tol) {
    FrakJResult res;
    res.z1 = frakJ_z(P.a, P.M, P.t, P.N);
    res.z2 = frakJ_z(P.b, P.M, P.t, P.N);
    const double y0 = P.w.lo(), y1 = P.w.hi();

    res.in_regime = P.a.r > 0 && P.b.r > 0;
    for (int i = 0; i <= 64 && res.in_regime; ++i) {
        double y = y0 + (y1 - y0) * i / 64;
        for (double z : {res.z1, res.z2}) {
            double x0 = frakJ_stationary_point(z, y);
            if (!(x0 > P.V.lo() && x0 < P.V.hi())) res.in_regime = false;
        }
    }
    auto d = static_cast<double>(P.a.l * P.b.r * P.b.p - P.b.l * P.a.r * P.a.p);
    res.delta_bound = d == 0 ? std::numeric_limits<double>::infinity()
                             : static_cast<double>(P.M * P.M * P.a.l * P.b.l) / (P.N * std::abs(d));

    auto make = [&](const FrakJTriple& tr, double y) {
        OscillatorySpec s;
        s.t = P.t;
        s.N = P.N;
        s.M = P.M;
        s.n = P.N * y;
        s.r = tr.r;
        s.p = tr.p;
        s.l = tr.l;
        s.weight = P.V;
        s.kind = PhaseKind::frakJ_phase;
        return s;
    };
    const double inner_tol = 0.05 * abs_tol;
    double inner_err = 0, inner_max = 0;
    const bool same = P.a.r == P.b.r && P.a.p == P.b.p && P.a.l == P.b.l;
    auto f = [&](double y) {
        double wy = P.w(y);
        if (wy == 0) return cplx(0);
        auto j1 = integrate_oscillatory(make(P.a, y), inner_tol);
        QuadResult j2 = same ? j1 : integrate_oscillatory(make(P.b, y), inner_tol);
        inner_err = std::max({inner_err, j1.error, j2.error});
        inner_max = std::max({inner_max, std::abs(j1.value), std::abs(j2.value)});
        return wy * j1.value * std::conj(j2.value);
    };
    // the y-phase of J(y) has derivative -t/x0(y)
    double cycles = 0;
    if (res.z1 > 0 && res.z2 > 0)
        for (int i = 0; i < 64; ++i) {
            double y = y0 + (i + 0.5) * (y1 - y0) / 64;
            cycles += std::abs(P.t) / two_pi *
                      std::abs(1 / frakJ_stationary_point(res.z1, y) -
                               1 / frakJ_stationary_point(res.z2, y)) *
                      (y1 - y0) / 64;
        }
    int panels = static_cast<int>(std::ceil(10 * cycles / 16)) + 4;
    auto q = adaptive_integrate(f, y0, y1, 0.5 * abs_tol, panels, 16);
    res.value = q.value;
    res.error = q.error + 2 * inner_err * inner_max * std::abs(P.w.integral());
    return res;
}

FrakJScanReport frak_J_bound_scan(int points, const std::vector<double>& ts, std::uint64_t seed,
                                  int threads) {
    if (points < 1 || ts.empty()) throw DomainError("frak_J_bound_scan: empty grid");
    const std::vector<std::int64_t> Ms = {7, 11};
    const std::vector<std::int64_t> primes = {2, 3, 5, 13, 17, 19, 23, 29};
    std::mt19937_64 rng(seed);
    auto pick = [&](std::int64_t M) {
        std::int64_t q;
        do q = primes[rng() % primes.size()];
        while (q == M);
        return q;
    };
    FrakJScanReport rep;
    rep.points.resize(static_cast<std::size_t>(points));
    const SmoothWeight V = SmoothWeight::bump(1.0, 2.0), w = SmoothWeight::bump(1.0, 2.0);
    std::uniform_real_distribution<double> Z(85.0, 115.0);
    for (int i = 0; i < points; ++i) {
        FrakJParams& P = rep.points[i].params;
        P.t = ts[i % ts.size()];
        P.M = Ms[(i / ts.size()) % Ms.size()];
        P.V = V;
        P.w = w;
        const int kind = i % 5;
        if (kind == 0) {
            // equal z from distinct triples: r_i proportional to l_i
            std::int64_t k = 1 + static_cast<std::int64_t>(rng() % 4);
            P.a.p = P.b.p = pick(P.M);
            P.a.l = pick(P.M);
            do P.b.l = pick(P.M);
            while (P.b.l == P.a.l);
            P.a.r = k * P.a.l;
            P.b.r = k * P.b.l;
        } else {
            P.a = {1 + static_cast<std::int64_t>(rng() % 12), pick(P.M), pick(P.M)};
        }
        double z = Z(rng);
        double M2 = static_cast<double>(P.M * P.M);
        P.N = z * M2 * P.t * P.t * static_cast<double>(P.a.l) /
              (16 * pi * pi * static_cast<double>(P.a.r * P.a.p));
        if (kind == 1) {
            P.b = P.a;
        } else if (kind > 1) {
            for (int tries = 0;; ++tries) {
                if (tries > 100000) throw NumericalError("frak_J_bound_scan: grid generation failed");
                FrakJTriple b{1 + static_cast<std::int64_t>(rng() % 40), pick(P.M), pick(P.M)};
                double zb = frakJ_z(b, P.M, P.t, P.N);
                if (zb < 80 || zb > 120) continue;
                if (P.a.l * b.r * b.p == b.l * P.a.r * P.a.p) continue;
                P.b = b;
                break;
            }
        }
    }
    parallel_items(rep.points.size(), threads, [&](std::size_t i) {
        rep.points[i].result = frak_J(rep.points[i].params);
    });
    for (const auto& pt : rep.points) {
        const auto& r = pt.result;
        if (!r.in_regime) ++rep.out_of_regime;
        rep.C1 = std::max(rep.C1, std::abs(r.value) * pt.params.t);
        if (std::isfinite(r.delta_bound)) rep.C2 = std::max(rep.C2, std::abs(r.value) / r.delta_bound);
        if (r.z1 != r.z2) {
            for (int k = 0; k <= 10; ++k) {
                double y = 1.0 + 0.1 * k, h = 1e-3;
                double fd = (-frakJ_phi(r.z1, r.z2, y + 2 * h) + 8 * frakJ_phi(r.z1, r.z2, y + h) -
                             8 * frakJ_phi(r.z1, r.z2, y - h) + frakJ_phi(r.z1, r.z2, y - 2 * h)) /
                            (12 * h);
                rep.phi_derivative_max_error =
                    std::max(rep.phi_derivative_max_error,
                             std::abs(fd - frakJ_phi_derivative(r.z1, r.z2, y)));
            }
        }
    }
    return rep;
}

}  // namespace gl3
