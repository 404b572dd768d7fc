#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>

#include "gl3/bessel3.hpp"
#include "gl3/decomposition.hpp"
#include "gl3/expsums.hpp"
#include "gl3/oscint.hpp"
#include "gl3/voronoi.hpp"

using namespace gl3;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

int failures = 0;

void criterion(int id, const std::string& name, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("criterion %2d %s: %s; %s; %.1f s\n", id, o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), s);
    std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

}  // namespace

int main() {
    const int threads = default_threads();

    criterion(1, "Weil bound for c <= 2000", [&] {
        auto r = weil_scan(2000, threads, 40);
        bool ok = r.violations == 0 && r.oracle_max_diff <= 1e-9 && r.seconds <= 600;
        return Outcome{ok, std::to_string(r.violations) + " violations in " + std::to_string(r.sums_checked) +
                               " sums, max ratio " + fmt("%.4f", r.max_ratio) + ", " + std::to_string(threads) +
                               " threads"};
    });

    criterion(2, "frak C closed form for M in {5, 7, 11, 13}", [&] {
        bool ok = true;
        std::string d;
        for (i64 M : {5, 7, 11, 13}) {
            auto r = frak_C_scan(M, threads);
            ok = ok && r.violations == 0 && r.max_abs_error <= 1e-6 * static_cast<double>(M * M);
            d += "M=" + std::to_string(M) + ": " + std::to_string(r.violations) + " violations, max error " +
                 fmt("%.2e", r.max_abs_error) + (M == 13 ? "" : "; ");
        }
        return Outcome{ok, d};
    });

    criterion(3, "key identity, exact Poisson form", [&] {
        const auto start = std::chrono::steady_clock::now();
        double worst = 0;
        for (i64 M : {7, 11})
            for (double t : {100.0, 200.0}) {
                ExperimentConfig c;
                c.M = M;
                c.t = t;
                c.N = 1e4;
                worst = std::max(worst, key_identity_check(c, 2, 3, 15002).rel_error_exact);
            }
        return Outcome{worst <= 1e-6 && seconds_since(start) <= 1800, "max rel error " + fmt("%.2e", worst)};
    });

    criterion(4, "stationary-phase residual slope", [&] {
        OscillatorySpec s;
        s.N = 1e4;
        s.M = 7;
        s.n = 2387;
        s.weight = SmoothWeight::bump(0.5, 4);
        s.kind = PhaseKind::key_lemma_phase;
        double prev = 0, slope = 0;
        for (double t : {100.0, 200.0, 400.0, 800.0}) {
            s.t = t;
            double err = std::abs(integrate_oscillatory(s).value - stationary_phase_main_term(s).leading_term);
            if (prev > 0) slope += std::log2(err / prev) / 3;
            prev = err;
        }
        return Outcome{slope <= -1.4, "mean log2 ratio " + fmt("%.3f", slope)};
    });

    criterion(5, "frakJ bound constants", [&] {
        auto r = frak_J_bound_scan(200, {100, 200}, 1, threads);
        bool ok = r.points.size() == 200 && r.C1 <= 20 && r.C2 <= 20 && r.phi_derivative_max_error <= 1e-8;
        return Outcome{ok, "C1 " + fmt("%.3f", r.C1) + ", C2 " + fmt("%.3f", r.C2) + ", phi' error " +
                               fmt("%.2e", r.phi_derivative_max_error)};
    });

    criterion(6, "Bessel kernel against its asymptotic expansion", [&] {
        const SpectralParams triv = SpectralParams::trivial();
        double worst = 0, C = 0;
        for (double x : {10.0, 11.3, 14.0, 20.0, 30.0, 45.0})
            for (int s : {1, -1}) {
                cplx k = bessel_kernel(x * x * x, s, triv).value;
                worst = std::max(worst, std::abs(bessel_asymptotic(x, s, triv) - k) / std::abs(k));
            }
        for (double x : {3.0, 3.5, 4.0, 4.5, 5.0, 5.5, 6.0})
            for (int s : {1, -1}) {
                double env = std::exp(-3 * std::sqrt(3.0) * std::numbers::pi * x) / x;
                C = std::max(C, std::abs(bessel_kernel_split(x, s, triv).exponential) / env);
            }
        return Outcome{worst <= 1e-3 && std::isfinite(C) && C <= 10,
                       "max rel error " + fmt("%.2e", worst) + ", exponential envelope constant " + fmt("%.3f", C)};
    });

    criterion(7, "Voronoi identity for d3, N = 5000", [&] {
        const auto start = std::chrono::steady_clock::now();
        std::vector<VoronoiPoint> grid;
        for (i64 c : {3, 4, 5, 7, 8, 9, 11, 12})
            for (i64 a = 1; a < c; ++a)
                if (std::gcd(a, c) == 1) grid.push_back({1, a, c, 5000});
        auto reps = verify_voronoi(d3_provider(), grid, voronoi_default_weight(), 1e-5, threads);
        double worst = 0;
        bool ok = true;
        for (const auto& r : reps) {
            ok = ok && r.error.empty() && !r.skipped;
            worst = std::max(worst, r.rel_error);
        }
        ok = ok && worst <= 1e-4 && seconds_since(start) <= 7200;
        return Outcome{ok, std::to_string(grid.size()) + " points, max rel error " + fmt("%.2e", worst)};
    });

    criterion(8, "spacing sums for P, L, R in {2, 4, 8, 16}", [&] {
        double worst = 0, worst_filtered = 0;
        for (i64 P : {2, 4, 8, 16})
            for (i64 L : {2, 4, 8, 16})
                for (i64 R : {2, 4, 8, 16}) {
                    worst = std::max(worst, spacing_sum(P, L, R).ratio);
                    worst_filtered = std::max(worst_filtered, 7 * spacing_sum(P, L, R, 7).ratio);
                }
        return Outcome{worst <= 10 && worst_filtered <= 10,
                       "max ratio " + fmt("%.3f", worst) + ", filtered ratio times M " + fmt("%.3f", worst_filtered)};
    });

    criterion(9, "exponent optimisation", [&] {
        const auto start = std::chrono::steady_clock::now();
        auto s = optimize_exponents();
        bool ok = s.pi_P == Rational(5, 18) && s.pi_L == Rational(1, 9) && s.delta == Rational(1, 18) &&
                  s.final_exponent == Rational(13, 18) && s.final_exponent == Rational(3, 4) - Rational(1, 36) &&
                  seconds_since(start) < 1;
        return Outcome{ok, "pi_P " + to_string(s.pi_P) + ", pi_L " + to_string(s.pi_L) + ", delta " +
                               to_string(s.delta) + ", exponent " + to_string(s.final_exponent)};
    });

    criterion(10, "connection check at the standard config", [&] {
        ExperimentConfig c;
        auto r = connection_check(c);
        auto c2 = c;
        c2.t = 2 * c.t;
        auto r2 = connection_check(c2);
        double a = std::abs(r.ratio);
        bool ok = a >= 0.5 && a <= 2 && r2.residual < r.residual;
        return Outcome{ok, "|ratio| " + fmt("%.4f", a) + ", residual " + fmt("%.4f", r.residual) + " at t = 100, " +
                               fmt("%.4f", r2.residual) + " at t = 200"};
    });

    criterion(11, "Miller growth exponent over minor arcs", [&] {
        auto r = miller_scan(1'000'000, 16, d3_provider(), 1, threads, 1000, 4);
        return Outcome{r.exponent <= 0.85, "fitted exponent " + fmt("%.4f", r.exponent)};
    });

    std::printf("%d of 11 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
