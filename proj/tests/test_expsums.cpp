#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "gl3/errors.hpp"
#include "gl3/expsums.hpp"

using namespace gl3;

namespace {

// direct definitions with an inverse found by search
cplx kl_oracle(i64 a, i64 b, i64 c) {
    cplx s = 0;
    for (i64 x = 0; x < c; ++x) {
        if (std::gcd(x, c) != 1) continue;
        i64 xb = 0;
        while ((x * xb) % c != 1 % c) ++xb;
        double ph = 2 * M_PI * static_cast<double>(mod(a * x + b * xb, c)) / static_cast<double>(c);
        s += cplx(std::cos(ph), std::sin(ph));
    }
    return s;
}

u64 phi_naive(u64 n) {
    u64 c = 0;
    for (u64 k = 1; k <= n; ++k) c += std::gcd(k, n) == 1;
    return c;
}

}  // namespace

TEST_CASE("kloosterman examples") {
    for (i64 c = 1; c <= 30; ++c)
        CHECK(std::abs(kloosterman(0, 0, c) - static_cast<double>(phi_naive(c))) < 1e-12);
    CHECK(std::abs(kloosterman(1, 1, 3) + 1.0) < 1e-12);
    CHECK(std::abs(kloosterman(1, 1, 2) - 1.0) < 1e-12);
}

TEST_CASE("kloosterman agrees with oracle and is real") {
    for (i64 c = 1; c <= 40; ++c)
        for (i64 a = -3; a < c; ++a)
            for (i64 b = 0; b < c; b += 3) {
                cplx k = kloosterman(a, b, c);
                REQUIRE(std::abs(k - kl_oracle(a, b, c)) < 1e-9);
                REQUIRE(std::abs(k.imag()) <= 1e-10 * static_cast<double>(phi_naive(c)) + 1e-12);
            }
    for (i64 c : {1, 7, 12, 30}) {
        auto row = kloosterman_row(5, c);
        for (i64 b = 0; b < c; ++b) CHECK(std::abs(row[b] - kl_oracle(5, b, c)) < 1e-9);
    }
}

TEST_CASE("twisted kloosterman") {
    auto chi0 = build_character(7, 0);
    for (i64 c : {7, 14, 21, 49})
        for (i64 r = 0; r < 10; ++r)
            for (i64 n = 0; n < 10; ++n)
                CHECK(std::abs(twisted_kloosterman(chi0, r, n, c) - kloosterman(r, n, c)) < 1e-9);
    auto leg = build_character(5, 2);
    CHECK(std::abs(twisted_kloosterman(leg, 0, 0, 5)) < 1e-12);
    cplx v = twisted_kloosterman(leg, 1, 1, 5);
    cplx oracle = 0;
    for (i64 x = 1; x < 5; ++x) {
        i64 xb = 1;
        while (x * xb % 5 != 1) ++xb;
        int ls = (x == 1 || x == 4) ? 1 : -1;
        oracle += static_cast<double>(ls) * std::polar(1.0, 2 * M_PI * static_cast<double>((x + xb) % 5) / 5);
    }
    CHECK(std::abs(v - oracle) < 1e-12);
    CHECK(std::abs(v) <= 2 * std::sqrt(5.0) + 1e-12);
    CHECK_THROWS_AS(twisted_kloosterman(leg, 1, 1, 6), DomainError);
}

TEST_CASE("weil scan small moduli with oracle") {
    auto rep = weil_scan(150, 2, 40);
    CHECK(rep.violations == 0);
    CHECK(rep.oracle_max_diff < 1e-9);
    CHECK(rep.max_ratio <= 1.0 + 1e-9);
    std::uint64_t expected = 0;
    for (i64 c = 1; c <= 150; ++c) expected += static_cast<std::uint64_t>(c * c);
    CHECK(rep.sums_checked == expected);
    auto rep1 = weil_scan(150, 1, 0);
    CHECK(rep1.max_ratio == rep.max_ratio);
    CHECK(rep1.worst_c == rep.worst_c);
}

TEST_CASE("correlation sums") {
    CHECK(std::abs(correlation_sum({1, 1, 0, 0, 0}) - 1.0) < 1e-12);
    // brute force over x mod 3 with the oracle Kloosterman sums
    cplx o = 0;
    for (i64 x = 0; x < 3; ++x) o += kl_oracle(x, 1, 3) * kl_oracle(x, 1, 3);
    CHECK(std::abs(correlation_sum({3, 3, 1, 1, 0}) - o) < 1e-9);
    o = 0;
    for (i64 x = 0; x < 6; ++x)
        o += kl_oracle(x % 2, 1, 2) * kl_oracle(x % 3, 1, 3) * std::polar(1.0, 2 * M_PI * x / 6.0);
    CorrelationParams p{2, 3, 1, 1, 1};
    CHECK(std::abs(correlation_sum(p) - o) < 1e-9);
    CHECK(std::abs(correlation_sum(p)) <= 4 * correlation_bound_base(p));
    for (auto [s1, s2, t1, t2] : std::vector<std::array<i64, 4>>{{4, 6, 1, 5}, {9, 12, 2, 7}, {5, 5, 3, 3}}) {
        auto all = correlation_sum_all_n(s1, s2, t1, t2);
        for (i64 n = 0; n < static_cast<i64>(all.size()); ++n)
            CHECK(std::abs(all[n] - correlation_sum({s1, s2, t1, t2, n})) < 1e-8);
    }
}

TEST_CASE("correlation parameterizations agree") {
    // C_{l1,l2}(n) from its definition against the (s_i, t_i) lemma form
    for (i64 M : {7, 11})
        for (auto [p1, p2, l1, l2, r, m] : std::vector<std::array<i64, 6>>{
                 {5, 13, 3, 2, 4, 1}, {5, 13, 2, 2, 9, 3}, {17, 17, 3, 3, 5, 1}, {5, 13, 3, 2, 6, 2}})
            for (i64 n : {0, 1, 5, 17}) {
                cplx d = correlation_from_definition(p1, p2, l1, l2, r, m, M, n);
                cplx l = correlation_sum(correlation_lemma_params(p1, p2, l1, l2, r, m, M, n));
                CHECK(std::abs(d - l) < 1e-8 * (1 + std::abs(d)));
            }
}

TEST_CASE("zero frequency C") {
    // p1 = p2: (lr/m) phi(lr/m)
    CHECK(std::abs(zero_frequency_C(5, 5, 3, 4, 1) - 12.0 * 4) < 1e-12);
    // Ramanujan oracle: 6 c_6(1) = 6 mu(6) = 6, and 4 c_4(2) = -8
    CHECK(6 * ramanujan_sum(6, 1) == 6);
    CHECK(std::abs(zero_frequency_C(1, 3, 2, 2, 1) - (-8.0)) < 1e-12);
    // units mod 6 differ by 0, 2 or 4 only; 6 c_6(2) = -6
    CHECK(std::abs(zero_frequency_C(1, 5, 2, 3, 1) - (-6.0)) < 1e-12);
    for (i64 M : {7, 11})
        for (auto [p1, p2, l, r, m] : std::vector<std::array<i64, 5>>{
                 {2, 3, 5, 1, 1}, {3, 5, 2, 4, 1}, {5, 13, 3, 6, 2}, {2, 2, 5, 3, 1}, {13, 17, 3, 10, 5}}) {
            cplx closed = zero_frequency_C(p1, p2, l, r, m);
            cplx def = zero_frequency_C_definition(p1, p2, l, r, m, M);
            CHECK(std::abs(closed - def) < 1e-8 * (1 + std::abs(closed)));
            i64 q = l * r / m;
            if (mod_inverse(p1, q).value != mod_inverse(p2, q).value)
                CHECK(std::abs(closed) <= static_cast<double>(q * static_cast<i64>(tau(q))) + 1e-9);
        }
    CHECK_THROWS_AS(zero_frequency_C(2, 3, 2, 3, 1), DomainError);
}

TEST_CASE("frak C examples and exhaustive scan") {
    auto chi = build_character(5, 1);
    FrakCParams q{5, chi, 2, 2, 3, 3, 4, 4};
    auto r = frak_C(q);
    CHECK(r.congruent);
    CHECK(std::abs(r.brute - 20.0) < 1e-9);
    CHECK(std::abs(r.closed - 20.0) < 1e-9);
    FrakCParams q2{5, chi, 1, 1, 1, 1, 1, 2};
    auto r2 = frak_C(q2);
    CHECK(!r2.congruent);
    CHECK(std::abs(std::abs(r2.brute) - 5.0) < 1e-9);
    auto chi7 = build_character(7, 1);
    auto r3 = frak_C({7, chi7, 3, 3, 2, 2, 4, 4});
    CHECK(std::abs(r3.brute - 42.0) < 1e-9);
    CHECK_THROWS_AS(frak_C({7, chi7, 7, 3, 2, 2, 4, 4}), DomainError);
    for (i64 M : {5, 7}) {
        auto rep = frak_C_scan(M, 2);
        CHECK(rep.violations == 0);
        CHECK(rep.tuples == static_cast<std::uint64_t>((M - 2) * std::pow(M - 1, 6)));
        CHECK(rep.max_abs_error < 1e-9 * M * M);
    }
}

TEST_CASE("spacing sum against a six-fold enumeration") {
    using boost::multiprecision::cpp_rational;
    for (auto [P, L, R] : std::vector<std::array<i64, 3>>{{2, 2, 2}, {2, 2, 3}, {4, 2, 2}})
        for (std::optional<i64> M : {std::optional<i64>{}, std::optional<i64>{5}}) {
            std::vector<i64> ps, ls, rs;
            auto ok = [&](i64 v) { return !M || v % *M != 0; };
            for (i64 v = P; v <= 2 * P; ++v)
                if (is_prime(v) && ok(v)) ps.push_back(v);
            for (i64 v = L; v <= 2 * L; ++v)
                if (is_prime(v) && ok(v)) ls.push_back(v);
            for (i64 v = R; v <= 2 * R; ++v)
                if (ok(v)) rs.push_back(v);
            cpp_rational exact = 0;
            for (i64 p1 : ps) for (i64 p2 : ps) for (i64 l1 : ls) for (i64 l2 : ls)
                for (i64 r1 : rs) for (i64 r2 : rs) {
                    i64 a = l1 * r2 * p2, b = l2 * r1 * p1;
                    if (a == b || (M && (a - b) % *M != 0)) continue;
                    exact += cpp_rational(1, std::abs(a - b));
                }
            auto res = spacing_sum(P, L, R, M);
            CHECK(res.exact_rational() == exact.str());
            CHECK(static_cast<double>(res.value) == doctest::Approx(static_cast<double>(exact)).epsilon(1e-14));
        }
    auto r = spacing_sum(2, 2, 3);
    CHECK(r.ratio <= 10);
    // single prime in each segment, R = 1 with r in {1,2}: products can differ
    auto single = spacing_sum(2, 2, 1);
    CHECK(single.value > 0);
}

TEST_CASE("miller scan small") {
    auto prov = d3_provider();
    auto rep = miller_scan(10000, 8, prov, 3, 1, 100, 2);
    // alpha = 1/2 against direct summation with d3 from divisor triples
    std::vector<int> d3(10001, 0);
    for (int a = 1; a <= 10000; ++a)
        for (int b = 1; a * b <= 10000; ++b)
            for (int c = 1; a * b * c <= 10000; ++c) ++d3[a * b * c];
    double alt = 0, plain = 0;
    for (int n = 1; n <= 10000; ++n) {
        alt += (n % 2 ? -1.0 : 1.0) * d3[n];
        plain += d3[n];
    }
    int seen = 0;
    for (auto& [name, vals] : rep.rational_points) {
        seen += name == "1/2" || name == "0/1";
        if (name == "1/2") CHECK(vals.back() == doctest::Approx(std::abs(alt)).epsilon(1e-9));
        if (name == "0/1") CHECK(vals.back() == doctest::Approx(plain).epsilon(1e-12));
    }
    CHECK(seen == 2);
    CHECK(rep.X.back() == 10000);
    CHECK(rep.exponent < 1.0);
}

TEST_CASE("correlation scan small") {
    auto rep = correlation_scan(12, 2, 5, 2);
    CHECK(rep.trivial_violations == 0);
    CHECK(rep.c0 <= 4.0);
    auto rep1 = correlation_scan(12, 2, 5, 1);
    CHECK(rep1.c0 == rep.c0);
}
