#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace gl3 {

using i64 = std::int64_t;
using u64 = std::uint64_t;

struct Residue {
    i64 value = 0;
    i64 modulus = 1;
    bool operator==(const Residue&) const = default;
};

struct Factorization {
    u64 n = 1;
    std::vector<std::pair<u64, int>> factors;  // (prime, exponent), primes increasing

    int omega() const { return static_cast<int>(factors.size()); }
    u64 tau() const;
    u64 euler_phi() const;
    int mobius() const;
    std::vector<u64> divisors() const;  // ascending
};

// Overflow-checked 64-bit product; throws std::overflow_error.
i64 checked_mul(i64 a, i64 b);

inline i64 mod(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 a, u64 e, u64 m);

bool is_prime(u64 n);

Residue mod_inverse(i64 a, i64 m);
Factorization factorize(u64 n);
Residue primitive_root(u64 p);
std::vector<i64> primes_in_dyadic(i64 X);
std::vector<i64> primes_up_to(i64 n);

u64 tau(u64 n);
int omega(u64 n);
u64 euler_phi(u64 n);
int mobius(u64 n);

// c_q(n) = sum over d | gcd(n, q) of mu(q/d) d
i64 ramanujan_sum(i64 q, i64 n);

// Exact check that n*Mbar/r + n*rbar/M - n/(M r) is an integer,
// with Mbar = M^{-1} mod r and rbar = r^{-1} mod M.
bool reciprocity_holds(i64 n, i64 M, i64 r);

}  // namespace gl3
