#include "gl3/arith.hpp"
#include "gl3/errors.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gl3 {

i64 checked_mul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("checked_mul: 64-bit overflow");
    return r;
}

u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

u64 powmod(u64 a, u64 e, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    static const u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 p : small) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // this witness set is deterministic below 3.3e24
    for (u64 a : small) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

Residue mod_inverse(i64 a, i64 m) {
    if (m < 1) throw DomainError("mod_inverse: modulus must be positive");
    if (m == 1) return {0, 1};
    i64 old_r = mod(a, m), r = m, old_s = 1, s = 0;
    while (r != 0) {
        i64 q = old_r / r;
        i64 t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1)
        throw DomainError("mod_inverse: gcd(" + std::to_string(a) + ", " + std::to_string(m) +
                          ") = " + std::to_string(old_r) + " is not 1");
    return {mod(old_s, m), m};
}

namespace {

u64 pollard_rho(u64 n) {
    if (n % 2 == 0) return 2;
    for (u64 c = 1;; ++c) {
        auto f = [&](u64 x) { return (mulmod(x, x, n) + c) % n; };
        u64 x = 2, y = 2, d = 1;
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            d = std::gcd(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}

void factor_into(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    u64 d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

Factorization factorize(u64 n) {
    if (n == 0) throw DomainError("factorize: n = 0 has no factorization");
    Factorization f;
    f.n = n;
    std::vector<u64> primes;
    for (u64 p = 2; p < 1000 && p * p <= n; ++p) {
        while (n % p == 0) {
            primes.push_back(p);
            n /= p;
        }
    }
    factor_into(n, primes);
    std::sort(primes.begin(), primes.end());
    for (u64 p : primes) {
        if (!f.factors.empty() && f.factors.back().first == p)
            ++f.factors.back().second;
        else
            f.factors.emplace_back(p, 1);
    }
    return f;
}

u64 Factorization::tau() const {
    u64 t = 1;
    for (auto& [p, e] : factors) t *= static_cast<u64>(e + 1);
    return t;
}

u64 Factorization::euler_phi() const {
    u64 r = n;
    for (auto& [p, e] : factors) r = r / p * (p - 1);
    return r;
}

int Factorization::mobius() const {
    for (auto& [p, e] : factors)
        if (e > 1) return 0;
    return factors.size() % 2 ? -1 : 1;
}

std::vector<u64> Factorization::divisors() const {
    std::vector<u64> d{1};
    for (auto& [p, e] : factors) {
        std::size_t sz = d.size();
        u64 pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < sz; ++i) d.push_back(d[i] * pk);
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

Residue primitive_root(u64 p) {
    if (!is_prime(p)) throw DomainError("primitive_root: " + std::to_string(p) + " is not prime");
    if (p == 2) return {1, 2};
    auto f = factorize(p - 1);
    for (u64 g = 2; g < p; ++g) {
        bool ok = true;
        for (auto& [q, e] : f.factors) {
            if (powmod(g, (p - 1) / q, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return {static_cast<i64>(g), static_cast<i64>(p)};
    }
    throw DomainError("primitive_root: none found");
}

std::vector<i64> primes_up_to(i64 n) {
    std::vector<i64> out;
    if (n < 2) return out;
    std::vector<bool> comp(static_cast<std::size_t>(n + 1), false);
    for (i64 i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        out.push_back(i);
        for (i64 j = i * i; j <= n; j += i) comp[j] = true;
    }
    return out;
}

std::vector<i64> primes_in_dyadic(i64 X) {
    std::vector<i64> out;
    for (i64 p : primes_up_to(2 * X))
        if (p >= X) out.push_back(p);
    return out;
}

u64 tau(u64 n) { return factorize(n).tau(); }
int omega(u64 n) { return factorize(n).omega(); }
u64 euler_phi(u64 n) { return factorize(n).euler_phi(); }
int mobius(u64 n) { return factorize(n).mobius(); }

i64 ramanujan_sum(i64 q, i64 n) {
    if (q < 1) throw DomainError("ramanujan_sum: q must be positive");
    i64 g = std::gcd(mod(n, q), q);
    if (g == 0) g = q;
    i64 s = 0;
    for (u64 d : factorize(static_cast<u64>(g)).divisors())
        s += mobius(static_cast<u64>(q) / d) * static_cast<i64>(d);
    return s;
}

bool reciprocity_holds(i64 n, i64 M, i64 r) {
    if (std::gcd(M, r) != 1) throw DomainError("reciprocity_holds: gcd(M, r) must be 1");
    i64 Mbar = mod_inverse(M, r).value;
    i64 rbar = mod_inverse(r, M).value;
    // common denominator M r: n (Mbar M + rbar r - 1) / (M r)
    __int128 num = static_cast<__int128>(n) * (static_cast<__int128>(Mbar) * M +
                                               static_cast<__int128>(rbar) * r - 1);
    __int128 den = static_cast<__int128>(M) * r;
    return num % den == 0;
}

}  // namespace gl3
