#include <cmath>

#include "doctest.h"
#include "gl3/errors.hpp"
#include "gl3/oscint.hpp"

using namespace gl3;

namespace {

// composite Simpson on a uniform grid, evaluated through std::pow on complex numbers
template <class F>
cplx simpson(F f, double a, double b, int n) {
    double h = (b - a) / n;
    cplx s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

double bump_oracle(double x, double lo, double hi) {
    if (x <= lo || x >= hi) return 0;
    double u = (2 * x - lo - hi) / (hi - lo);
    return std::exp(1.0) * std::exp(-1.0 / (1 - u * u));
}

OscillatorySpec key_spec(double t, double N, double n, const SmoothWeight& V) {
    OscillatorySpec s;
    s.t = t;
    s.N = N;
    s.n = n;
    s.M = 7;
    s.weight = V;
    s.kind = PhaseKind::key_lemma_phase;
    return s;
}

}  // namespace

TEST_CASE("jets match closed-form derivatives") {
    const int K = 12;
    double x = 0.3;
    Jet X = Jet::variable(K, x);
    Jet ex = exp(X * X);
    // d^k/dx^k exp(x^2) = H-type recurrence: p_{k+1} = p_k' + 2x p_k
    std::vector<double> poly = {1};
    for (int k = 0; k <= K; ++k) {
        double v = 0;
        for (std::size_t i = 0; i < poly.size(); ++i) v += poly[i] * std::pow(x, i);
        CHECK(ex.derivative(k).real() == doctest::Approx(v * std::exp(x * x)).epsilon(1e-11));
        std::vector<double> next(poly.size() + 1, 0.0);
        for (std::size_t i = 1; i < poly.size(); ++i) next[i - 1] += i * poly[i];
        for (std::size_t i = 0; i < poly.size(); ++i) next[i + 1] += 2 * poly[i];
        poly = next;
    }
    Jet lg = log(X + 1.0);
    Jet rc = reciprocal(Jet(K, 1.0) - X);
    for (int k = 1; k <= K; ++k) {
        CHECK(lg[k].real() == doctest::Approx((k % 2 ? 1.0 : -1.0) / (k * std::pow(1 + x, k))));
        CHECK(rc[k].real() == doctest::Approx(1.0 / std::pow(1 - x, k + 1)));
    }
    Jet q = (X * X + 2.0) / (X + 3.0);
    Jet back = q * (X + 3.0);
    CHECK(std::abs(back[0] - (x * x + 2)) < 1e-14);
    CHECK(std::abs(back[1] - 2 * x) < 1e-13);
    CHECK(std::abs(back[2] - 1.0) < 1e-13);
    for (int k = 3; k <= K; ++k) CHECK(std::abs(back[k]) < 1e-12);
}

TEST_CASE("smooth weight values, bounds and moments") {
    SmoothWeight V = SmoothWeight::bump(1, 2);
    CHECK(V(1.5) == doctest::Approx(1.0));
    CHECK(V(1.0) == 0.0);
    CHECK(V(2.5) == 0.0);
    for (double x = 1.01; x < 2; x += 0.0731) CHECK(V(x) == doctest::Approx(bump_oracle(x, 1, 2)));
    for (double x = 1.05; x < 1.96; x += 0.0917) {
        double h = 1e-5;
        double fd1 = (bump_oracle(x + h, 1, 2) - bump_oracle(x - h, 1, 2)) / (2 * h);
        double fd2 = (bump_oracle(x + h, 1, 2) - 2 * bump_oracle(x, 1, 2) + bump_oracle(x - h, 1, 2)) / (h * h);
        CHECK(V.derivative(x, 1) == doctest::Approx(fd1).epsilon(1e-6));
        CHECK(V.derivative(x, 2) == doctest::Approx(fd2).epsilon(1e-4));
    }
    for (double x = 1.0; x <= 2.0; x += 1.0 / 997)
        for (int k = 0; k <= V.derivative_order(); ++k)
            REQUIRE(std::abs(V.derivative(x, k)) <= V.bounds()[k]);
    double ref = simpson([](double x) { return cplx(bump_oracle(x, 1, 2)); }, 1, 2, 200000).real();
    CHECK(V.integral() == doctest::Approx(ref).epsilon(1e-12));
    double ref1 = simpson([](double x) { return cplx(bump_oracle(x, 1, 2) * std::log(x)); }, 1, 2, 200000).real();
    CHECK(V.log_moment(1) == doctest::Approx(ref1).epsilon(1e-12));
    CHECK(V.total_variation() == doctest::Approx(2.0).epsilon(1e-6));

    // two dilates with opposite integrals annihilate the zeroth moment
    double I1 = SmoothWeight::bump(1, 2).integral(), I2 = SmoothWeight::bump(2, 4).integral();
    auto W = SmoothWeight::combination({{1.0, 1, 2}, {-I1 / I2, 2, 4}}, 1);
    CHECK(std::abs(W.integral()) < 1e-12);
    CHECK(W.annihilated_log_moments() == 1);
    CHECK_THROWS_AS(SmoothWeight::combination({{1.0, 1, 2}, {1.0, 2, 4}}, 1), DomainError);
    CHECK_THROWS_AS(SmoothWeight::bump(0, 1), DomainError);
}

TEST_CASE("integrate_oscillatory references") {
    SmoothWeight V = SmoothWeight::bump(1, 2);
    auto s = key_spec(0, 1e4, 0, V);
    auto q = integrate_oscillatory(s);
    CHECK(std::abs(q.value - V.integral()) < 1e-12);

    double I1 = SmoothWeight::bump(1, 2).integral(), I2 = SmoothWeight::bump(1.5, 3).integral();
    auto W = SmoothWeight::combination({{1.0, 1, 2}, {-I1 / I2, 1.5, 3}}, 1);
    auto s2 = key_spec(100, 1e4, 0, W);
    auto q2 = integrate_oscillatory(s2);
    auto oracle = [&](double x) { return W(x) * std::pow(cplx(x), cplx(0, -100)); };
    cplx ref = simpson(oracle, 1, 3, 600000);
    CHECK(std::abs(q2.value - ref) < 1e-9);

    // full phase with a linear term against the direct formula
    OscillatorySpec s3 = key_spec(100, 1e4, 3000, V);
    s3.r = 2;
    s3.p = 3;
    s3.l = 5;
    s3.kind = PhaseKind::J_it_phase;
    auto q3 = integrate_oscillatory(s3);
    double k = 2.0 * 1e4 * 3 / (49.0 * 5 * 100);
    auto o3 = [&](double x) {
        return V(x) * std::pow(cplx(x), cplx(0, -100)) * std::exp(cplx(0, -two_pi * (0.3 * 100 / x + k * x)));
    };
    CHECK(std::abs(q3.value - simpson(o3, 1, 2, 600000)) < 1e-9);

    // conjugation under t -> -t
    OscillatorySpec s4 = s3;
    s4.t = -s3.t;
    CHECK(std::abs(integrate_oscillatory(s4).value - std::conj(q3.value)) < 1e-12);

    // halving the tolerance moves the result by less than the reported error
    for (double tol : {1e-8, 1e-10}) {
        auto a = integrate_oscillatory(s3, tol), b = integrate_oscillatory(s3, tol / 2);
        CHECK(std::abs(a.value - b.value) <= a.error + 1e-15);
    }
    OscillatorySpec big = s3;
    big.t = 2e5;
    CHECK_THROWS_AS(integrate_oscillatory(big), DomainError);
    CHECK_THROWS_AS(integrate_oscillatory(s3, 1e-13, 500), ResourceError);
}

TEST_CASE("stationary points") {
    const double N = 1e4;
    auto s = key_spec(100, N, 1.5 * N / two_pi, SmoothWeight::bump(1, 2));
    auto rep = stationary_phase_main_term(s);
    CHECK(rep.x0 == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(std::abs(s.phase_d1(rep.x0)) <= 1e-10 * s.t / rep.x0);

    auto s1 = key_spec(100, N, N / two_pi, SmoothWeight::bump(0.5, 1.5));
    auto r1 = stationary_phase_main_term(s1);
    CHECK(r1.x0 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(r1.f_second_at_x0) == doctest::Approx(100 / two_pi).epsilon(1e-12));
    double h = 1e-4;
    double fd = (s1.phase(1 + h) - 2 * s1.phase(1) + s1.phase(1 - h)) / (h * h);
    CHECK(fd == doctest::Approx(r1.f_second_at_x0).epsilon(1e-6));
    // the explicit leading term
    cplx lead = std::pow(cplx(two_pi / N), cplx(0, -100)) * e(-100 / two_pi) *
                std::pow(cplx(N / two_pi), cplx(0, -100)) * s1.weight(1.0) * std::sqrt(two_pi / 100) *
                e(-1.0 / 8);
    CHECK(std::abs(r1.leading_term - lead) < 1e-10);

    // frakJ branch: 16 pi^2 r N p y/(M^2 t^2 l) = 3 at y = 1
    OscillatorySpec f;
    f.t = 100;
    f.M = 7;
    f.r = 1;
    f.p = 1;
    f.l = 1;
    f.N = 3 * 49 * 1e4 / (16 * std::numbers::pi * std::numbers::pi);
    f.n = f.N;
    f.weight = SmoothWeight::bump(3, 6);
    f.kind = PhaseKind::frakJ_phase;
    auto rf = stationary_phase_main_term(f);
    CHECK(rf.x0 == doctest::Approx(49 * 1e4 / (4 * std::numbers::pi * f.N)).epsilon(1e-12));
    CHECK(!rf.other_branch);
    CHECK(std::abs(f.phase_d1(rf.x0)) <= 1e-10 * f.t / rf.x0);

    auto out = key_spec(100, N, 3 * N / two_pi, SmoothWeight::bump(1, 2));
    CHECK_THROWS_AS(stationary_phase_main_term(out), PreconditionError);
}

TEST_CASE("stationary phase residual decays like t^{-3/2}") {
    // n = 5000, N = 10^4 puts x0 at pi
    SmoothWeight V = SmoothWeight::bump(2, 5);
    double C = 0;
    for (double t : {100.0, 200.0, 400.0}) {
        auto s = key_spec(t, 1e4, 5000, V);
        double err = std::abs(integrate_oscillatory(s).value - stationary_phase_main_term(s).leading_term);
        C = std::max(C, err * std::pow(t, 1.5));
    }
    MESSAGE("fitted constant C = " << C);
    CHECK(C < 100);

    SmoothWeight W = SmoothWeight::bump(0.5, 4);
    double prev = 0, slope = 0;
    for (double t : {100.0, 200.0, 400.0, 800.0}) {
        auto s = key_spec(t, 1e4, 2387, W);
        double err = std::abs(integrate_oscillatory(s).value - stationary_phase_main_term(s).leading_term);
        if (prev > 0) slope += std::log2(err / prev) / 3;
        prev = err;
    }
    CHECK(slope <= -1.4);
}

TEST_CASE("derivative test bounds") {
    auto s = key_spec(100, 1e4, 0, SmoothWeight::bump(1, 2));
    CHECK(derivative_test_bound(s, 1) == doctest::Approx(4 * std::numbers::pi / 100).epsilon(1e-12));
    CHECK(derivative_test_bound(s, 1) >= std::abs(integrate_oscillatory(s).value));

    auto k = key_spec(100, 1e4, 1.5e4 / two_pi, SmoothWeight::bump(1, 2));
    CHECK_THROWS_AS(derivative_test_bound(k, 1), PreconditionError);
    double b2 = derivative_test_bound(k, 2);
    CHECK(b2 >= std::abs(integrate_oscillatory(k).value));
    double scale = 1.5 * std::sqrt(two_pi / 100);
    CHECK(b2 / scale >= 1.0);
    CHECK(b2 / scale <= 20.0);
    CHECK_THROWS_AS(derivative_test_bound(k, 3), DomainError);
}

TEST_CASE("frakJ") {
    // phi' closed form against a five-point difference quotient
    for (double z1 : {0.7, 1.3, 90.0})
        for (double z2 : {0.9, 2.0, 110.0})
            for (double y = 1; y <= 2; y += 0.25) {
                double h = 1e-3;
                double fd = (-frakJ_phi(z1, z2, y + 2 * h) + 8 * frakJ_phi(z1, z2, y + h) -
                             8 * frakJ_phi(z1, z2, y - h) + frakJ_phi(z1, z2, y - 2 * h)) / (12 * h);
                CHECK(std::abs(fd - frakJ_phi_derivative(z1, z2, y)) < 1e-8);
            }
    FrakJParams P;
    P.t = 100;
    P.M = 7;
    P.a = {3, 5, 13};
    P.b = P.a;
    P.N = 100 * 49 * 1e4 * 13 / (16 * std::numbers::pi * std::numbers::pi * 15);
    auto r = frak_J(P);
    CHECK(r.in_regime);
    CHECK(r.z1 == doctest::Approx(100.0));
    CHECK(r.value.real() > 0);
    CHECK(std::abs(r.value.imag()) < 1e-9);
    CHECK(std::isinf(r.delta_bound));
    // reference by the same nested integral on fixed grids
    double ref = 0;
    for (int i = 1; i < 400; ++i) {
        double y = 1 + i / 400.0;
        OscillatorySpec s;
        s.t = 100;
        s.N = P.N;
        s.M = 7;
        s.n = P.N * y;
        s.r = 3;
        s.p = 5;
        s.l = 13;
        auto o = [&](double x) {
            return P.V(x) * std::exp(cplx(0, two_pi * s.phase(x)));
        };
        ref += std::norm(simpson(o, 1, 2, 4000)) * P.w(y) / 400;
    }
    CHECK(r.value.real() == doctest::Approx(ref).epsilon(1e-6));

    P.b = {2, 5, 13};
    auto r2 = frak_J(P);
    CHECK(std::abs(r2.value) < r.value.real());
    CHECK(std::abs(r2.value) <= 20 * r2.delta_bound);

    auto scan = frak_J_bound_scan(10, {100, 200}, 3, 2);
    CHECK(scan.out_of_regime == 0);
    CHECK(scan.C1 <= 20);
    CHECK(scan.C2 <= 20);
    CHECK(scan.phi_derivative_max_error < 1e-8);
}

TEST_CASE("truncation cutoff") {
    SmoothWeight V = SmoothWeight::bump(1, 2);
    auto tiny = truncation_cutoff(7, 100, 1e8, 2, 2, V);
    CHECK(tiny.scale < 1);
    CHECK(tiny.R_max == 0);
    auto r = truncation_cutoff(7, 100, 1e5, 2, 2, V);
    CHECK(r.scale == doctest::Approx(4.9));
    CHECK(r.R_max >= 4.9 / 8);
    CHECK(r.R_max <= 4.9 * 8);
    // worst case p = P, l = 2L beyond the cutoff
    for (double y : {1.0, 1.5, 2.0}) {
        OscillatorySpec s;
        s.t = 100;
        s.N = 1e5;
        s.M = 7;
        s.n = y * 1e5;
        s.p = 2;
        s.l = 4;
        s.weight = V;
        s.r = r.R_max + 1;
        CHECK(std::abs(integrate_oscillatory(s, 1e-13).value) < 1e-12);
    }
    auto r2 = truncation_cutoff(7, 200, 1e5, 2, 2, V);
    double ratio = static_cast<double>(r2.R_max) / static_cast<double>(r.R_max);
    CHECK(ratio >= 2);
    CHECK(ratio <= 8);
}
