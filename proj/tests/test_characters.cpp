#include <random>

#include "doctest.h"
#include "gl3/characters.hpp"
#include "gl3/errors.hpp"

using namespace gl3;

namespace {

int legendre_by_squares(i64 n, i64 p) {
    n = mod(n, p);
    if (n == 0) return 0;
    for (i64 x = 1; x < p; ++x)
        if (x * x % p == n) return 1;
    return -1;
}

// discrete log by brute force
i64 dlog(i64 g, i64 n, i64 p) {
    i64 x = 1;
    for (i64 k = 0; k < p - 1; ++k) {
        if (x == mod(n, p)) return k;
        x = x * g % p;
    }
    return -1;
}

}  // namespace

TEST_CASE("build_character examples") {
    auto chi0 = build_character(5, 0);
    for (i64 n = 1; n < 5; ++n) CHECK(std::abs(chi0(n) - 1.0) < 1e-15);
    auto leg = build_character(5, 2);
    CHECK(std::abs(leg(2) + 1.0) < 1e-14);
    for (i64 n = 0; n < 25; ++n)
        CHECK(std::abs(leg(n) - static_cast<double>(legendre_by_squares(n, 5))) < 1e-14);
    auto c7 = build_character(7, 1);
    CHECK(c7.generator().value == 3);
    CHECK(std::abs(c7(3) - e(1.0 / 6)) < 1e-14);
    CHECK_THROWS_AS(build_character(9, 1), DomainError);
    CHECK_THROWS_AS(build_character(7, 6), DomainError);
    CHECK_THROWS_AS(build_character(7, -1), DomainError);
}

TEST_CASE("evaluate examples and discrete log oracle") {
    auto chi = build_character(5, 1);
    CHECK(std::abs(evaluate(chi, 10)) == 0.0);
    CHECK(std::abs(evaluate(build_character(5, 0), 3) - 1.0) < 1e-15);
    CHECK(std::abs(evaluate(build_character(5, 2), 4) - 1.0) < 1e-14);
    for (i64 M : {7, 11, 13, 31}) {
        for (i64 k = 0; k < M - 1; ++k) {
            auto c = build_character(M, k);
            i64 g = c.generator().value;
            for (i64 n = 1; n < M; ++n) {
                i64 j = dlog(g, n, M);
                CHECK(c.log(n) == j);
                CHECK(std::abs(c(n) - e(static_cast<double>(k * j % (M - 1)) / (M - 1))) < 1e-13);
            }
        }
    }
}

TEST_CASE("parity: chi(-1) squared is 1 and equals chi(M-1)") {
    for (i64 M : {3, 5, 7, 11, 13, 101})
        for (i64 k = 0; k < M - 1; ++k) {
            auto c = build_character(M, k);
            CHECK(std::abs(c(-1) * c(-1) - 1.0) < 1e-12);
            CHECK(std::abs(c(-1) - c(M - 1)) == 0.0);
        }
}

TEST_CASE("orthogonality for every non-principal character, M <= 101") {
    for (i64 M = 3; M <= 101; ++M) {
        if (!is_prime(static_cast<u64>(M))) continue;
        for (i64 k = 1; k < M - 1; ++k) {
            auto c = build_character(M, k);
            cplx s = 0;
            for (i64 n = 0; n < M; ++n) s += c(n);
            REQUIRE(std::abs(s) < 1e-12);
        }
    }
}

TEST_CASE("gauss sums have modulus sqrt(M)") {
    auto leg5 = build_character(5, 2);
    CHECK(std::abs(gauss_sum(leg5) - std::sqrt(5.0)) < 1e-12);
    auto c3 = build_character(3, 1);
    CHECK(std::abs(gauss_sum(c3) - cplx(0, std::sqrt(3.0))) < 1e-12);
    for (i64 k = 1; k < 6; ++k) CHECK(std::abs(std::abs(gauss_sum(build_character(7, k))) - std::sqrt(7.0)) < 1e-10);
    for (i64 M = 3; M <= 101; ++M) {
        if (!is_prime(static_cast<u64>(M))) continue;
        for (i64 k = 1; k < M - 1; ++k)
            REQUIRE(std::abs(std::abs(gauss_sum(build_character(M, k))) - std::sqrt(double(M))) < 1e-10);
    }
    CHECK_THROWS_AS(gauss_sum(build_character(7, 0)), DomainError);
}

TEST_CASE("complete multiplicativity on random pairs") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<i64> d(-100000, 100000);
    auto chi = build_character(101, 17);
    for (int i = 0; i < 10000; ++i) {
        i64 a = d(rng), b = d(rng);
        REQUIRE(std::abs(chi(a * b) - chi(a) * chi(b)) < 1e-12);
    }
}

TEST_CASE("conjugate character") {
    for (i64 k = 0; k < 12; ++k) {
        auto c = build_character(13, k);
        auto cc = c.conj();
        for (i64 n = 0; n < 13; ++n) CHECK(std::abs(cc(n) - std::conj(c(n))) < 1e-13);
    }
}
