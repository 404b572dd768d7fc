#include <cmath>
#include <numeric>

#include "doctest.h"
#include "gl3/errors.hpp"
#include "gl3/voronoi.hpp"

using namespace gl3;

namespace {

// ordered triples (a, b, c) with abc = n
long triples(long n) {
    long count = 0;
    for (long a = 1; a <= n; ++a)
        if (n % a == 0)
            for (long b = 1; b <= n / a; ++b)
                if ((n / a) % b == 0) ++count;
    return count;
}

// d3 up to X as the Dirichlet convolution 1 * 1 * 1 by direct loops
std::vector<long> d3_oracle(long X) {
    std::vector<long> d(X + 1, 0);
    for (long a = 1; a <= X; ++a)
        for (long b = 1; a * b <= X; ++b)
            for (long c = 1; a * b * c <= X; ++c) ++d[a * b * c];
    return d;
}

}  // namespace

TEST_CASE("d3 provider values") {
    auto P = d3_provider();
    for (std::uint64_t p : {2, 3, 5, 7, 101}) {
        CHECK(P.lambda(1, p) == 3);
        CHECK(P.lambda(p, p) == 8);
        // lambda(p, 1) lambda(1, p) = lambda(p, p) + lambda(1, 1)
        CHECK(P.lambda(p, 1) * P.lambda(1, p) == P.lambda(p, p) + P.lambda(1, 1));
    }
    CHECK(triples(12) == 18);
    CHECK(P.lambda(1, 12) == 18);
    for (long n = 1; n <= 300; ++n) CHECK(P.lambda(1, static_cast<std::uint64_t>(n)) == triples(n));
    auto tab = P.table_1n(5000);
    auto ref = d3_oracle(5000);
    for (long n = 1; n <= 5000; ++n) REQUIRE(tab[n] == ref[n]);
    // lambda(p^a, p^b) = (a+1)(b+1)(a+b+2)/2
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; b <= 4; ++b) {
            auto pa = static_cast<std::uint64_t>(std::pow(3, a)), pb = static_cast<std::uint64_t>(std::pow(3, b));
            CHECK(P.lambda(pa, pb) == (a + 1) * (b + 1) * (a + b + 2) / 2);
        }
    CHECK(P.spectral().alpha[0] == cplx(0));
    CHECK_FALSE(P.cuspidal());
}

TEST_CASE("d3 provider multiplicativity and symmetry") {
    auto P = d3_provider();
    for (std::uint64_t m = 1; m <= 200; ++m)
        for (std::uint64_t n = 1; n <= 200; ++n) REQUIRE(P.lambda(m, n) == P.lambda(n, m));
    int checked = 0;
    for (std::uint64_t m1 = 1; m1 <= 14; ++m1)
        for (std::uint64_t n1 = 1; n1 <= 14; ++n1)
            for (std::uint64_t m2 = 1; m1 * m2 <= 200 && m2 <= 14; ++m2)
                for (std::uint64_t n2 = 1; n1 * n2 <= 200 && n2 <= 14; ++n2) {
                    if (std::gcd(m1 * n1, m2 * n2) != 1) continue;
                    REQUIRE(P.lambda(m1 * m2, n1 * n2) == P.lambda(m1, n1) * P.lambda(m2, n2));
                    ++checked;
                }
    CHECK(checked > 1000);
    auto Q = P.scaled(2.0);
    CHECK(Q.lambda(6, 10) == 2 * P.lambda(6, 10));
}

TEST_CASE("Rankin-Selberg envelope for d3") {
    auto tab = d3_provider().table_1n(1'000'000);
    double C = 0, s = 0;
    std::uint64_t next = 100;
    for (std::uint64_t n = 1; n <= 1'000'000; ++n) {
        s += tab[n] * tab[n];
        if (n == next) {
            double X = static_cast<double>(n);
            C = std::max(C, s / (X * std::pow(std::log(X), 8)));
            next *= 10;
        }
    }
    MESSAGE("fitted Rankin-Selberg constant " << C);
    CHECK(C > 0);
    CHECK(C < 1);
}

TEST_CASE("log moment annihilation") {
    SmoothWeight base = SmoothWeight::bump(1, 8);
    SmoothWeight w0 = annihilate_log_moments(base, 0);
    CHECK(w0.components().size() == base.components().size());
    CHECK(w0(3.0) == doctest::Approx(base(3.0)));

    SmoothWeight w1 = annihilate_log_moments(base, 1);
    CHECK(w1.components().size() == 2);
    CHECK(std::abs(w1.log_moment(0)) < 1e-12);
    CHECK(w1.sup() == doctest::Approx(1.0).epsilon(1e-3));

    SmoothWeight w3 = annihilate_log_moments(base, 3);
    CHECK(w3.components().size() == 4);
    for (int j = 0; j < 3; ++j) CHECK(std::abs(w3.log_moment(j)) < 1e-10);
    CHECK(w3.annihilated_log_moments() == 3);
    CHECK(annihilation_condition(base, 3) < 1e8);

    CHECK_THROWS_AS(annihilate_log_moments(base, 5), DomainError);
}

TEST_CASE("Voronoi left side") {
    auto P = d3_provider();
    SmoothWeight w = voronoi_default_weight();
    cplx l1 = voronoi_lhs(P, 1, 0, 1, w, 3000);
    CHECK(std::abs(l1.imag()) < 1e-12 * std::abs(l1));
    cplx a = voronoi_lhs(P, 1, 2, 7, w, 3000), b = voronoi_lhs(P, 1, -2, 7, w, 3000);
    CHECK(std::abs(a - std::conj(b)) < 1e-10 * std::abs(a));
    CHECK_THROWS_AS(voronoi_lhs(P, 1, 2, 4, w, 3000), DomainError);

    // direct oracle and frozen value at (m, a, c, N) = (1, 1, 4, 5000)
    const double N = 5000;
    auto d3 = d3_oracle(static_cast<long>(w.hi() * N) + 1);
    cplx ref = 0;
    for (long n = 1; n < static_cast<long>(d3.size()); ++n) {
        double v = w(n / N);
        if (v != 0) ref += static_cast<double>(d3[n]) * v * std::polar(1.0, -two_pi * static_cast<double>(n % 4) / 4);
    }
    cplx lhs = voronoi_lhs(P, 1, 1, 4, w, N);
    CHECK(std::abs(lhs - ref) < 1e-10 * std::abs(ref));
    CHECK(lhs.real() == doctest::Approx(6.610868607977103e-01).epsilon(1e-9));
    CHECK(lhs.imag() == doctest::Approx(-4.146906341420749e-01).epsilon(1e-9));
}

TEST_CASE("Voronoi right side") {
    auto P = d3_provider();
    SmoothWeight w = voronoi_default_weight();
    const double N = 5000;

    DualSum d4 = voronoi_rhs_detail(P, 1, 1, 4, w, N);
    cplx lhs = voronoi_lhs(P, 1, 1, 4, w, N);
    MESSAGE("c = 4: rel error " << voronoi_rel_error(lhs, d4.value) << ", x_cut " << d4.x_cut << ", tail "
                                << d4.tail_bound);
    CHECK(voronoi_rel_error(lhs, d4.value) <= 1e-4);
    CHECK(d4.tail_bound <= 1e-5 * std::abs(d4.value));

    // the dual length m'^2 n scales with c^3/N
    DualSum d8 = voronoi_rhs_detail(P, 1, 1, 8, w, N);
    double ratio = static_cast<double>(d8.y_cut) / static_cast<double>(d4.y_cut);
    CHECK(ratio == doctest::Approx(8.0).epsilon(0.02));

    // a = 1, c = 2 has a real left side; the +- terms pair up to a real right side
    cplx r2 = voronoi_rhs(P, 1, 1, 2, w, N);
    CHECK(std::abs(r2.imag()) <= 1e-8 * std::abs(r2));
    CHECK(voronoi_rel_error(voronoi_lhs(P, 1, 1, 2, w, N), r2) <= 1e-4);

    // U(x) = x W(x) against U in its usual form
    DualSum du = voronoi_rhs_detail(P, 1, 1, 4, w, N, 1e-5, DualNormalization::usual_form);
    CHECK(du.value == d4.value);

    CHECK_THROWS_AS(voronoi_rhs(P, 1, 1, 4, SmoothWeight::bump(1, 8), N), PreconditionError);
    CHECK_THROWS_AS(voronoi_rhs(P, 1, 2, 4, w, N), DomainError);
}

TEST_CASE("verify_voronoi grid") {
    auto P = d3_provider();
    SmoothWeight w = voronoi_default_weight();
    std::vector<VoronoiPoint> grid = {{1, 1, 4, 5000}, {1, 3, 7, 5000}, {1, 0, 1, 5000}};
    auto reps = verify_voronoi(P, grid, w);
    REQUIRE(reps.size() == 3);
    CHECK(reps[0].rel_error <= 1e-4);
    CHECK(reps[1].rel_error <= 1e-4);
    CHECK(reps[0].polar_handling == PolarHandling::annihilated_moments);
    CHECK(reps[2].skipped);
    CHECK(reps[2].polar_handling == PolarHandling::skipped);
    for (const auto& r : reps) CHECK(r.error.empty());

    auto loose = verify_voronoi(P, {{1, 3, 7, 5000}}, w, 1e-3);
    CHECK(loose[0].rel_error <= 1e-3);
    CHECK(reps[1].tail_bound <= loose[0].tail_bound);

    std::vector<VoronoiPoint> bad = {{1, 2, 4, 5000}};
    auto r = verify_voronoi(P, bad, w);
    CHECK_FALSE(r[0].error.empty());
    CHECK_THROWS_AS(verify_voronoi(P, grid, SmoothWeight::bump(1, 8)), PreconditionError);
}

TEST_CASE("Jacquet-Shalika constant and tail envelope") {
    SmoothWeight w = voronoi_default_weight();
    HankelTransform H(w, SpectralParams::trivial(), 0.5, 3000);
    double C = jacquet_shalika_constant(H);
    MESSAGE("|U(y)| <= C sqrt(y) on [1e-3, 10] with C = " << C);
    CHECK(C > 0);
    CHECK(std::isfinite(C));
    for (double y : {2e-3, 0.05, 0.7, 9.0}) {
        auto [a0, a1] = H.parts(y);
        CHECK(y * std::abs(0.5 * (a0 - a1)) <= C * std::sqrt(y) * 1.05);
    }

    TailEnvelope env(H, 1e5);
    REQUIRE(env.valid());
    CHECK(env.b() > 0);
    // the envelope dominates sampled values of |U| beyond its start
    for (double u = env.u0() + 0.37; u < env.u0() + 20; u += 1.1) {
        double x = u * u * u;
        auto [a0, a1] = H.parts(x);
        CHECK(x * std::abs(0.5 * (a0 - a1)) <= env(x));
        CHECK(x * std::abs(0.5 * (a0 + a1)) <= env(x));
    }
    CHECK_THROWS_AS(env(10.0), DomainError);
}
