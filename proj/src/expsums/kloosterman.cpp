#include <numeric>
#include <string>

#include "gl3/errors.hpp"
#include "gl3/expsums.hpp"

namespace gl3 {

namespace {

i64 mulm(i64 a, i64 b, i64 m) {
    return static_cast<i64>(((static_cast<__int128>(mod(a, m)) * mod(b, m)) % m));
}

}  // namespace

cplx kloosterman(i64 a, i64 b, i64 c) {
    if (c < 1) throw DomainError("kloosterman: modulus must be positive");
    if (c == 1) return 1.0;
    cplx s = 0;
    for (i64 x = 1; x < c; ++x) {
        if (std::gcd(x, c) != 1) continue;
        i64 xb = mod_inverse(x, c).value;
        s += e_frac(mod(mulm(a, x, c) + mulm(b, xb, c), c), c);
    }
    return s;
}

std::vector<cplx> kloosterman_row(i64 a, i64 c) {
    std::vector<cplx> row(static_cast<std::size_t>(c), cplx(0, 0));
    if (c == 1) {
        row[0] = 1.0;
        return row;
    }
    std::vector<cplx> roots = unit_roots(c);
    for (i64 x = 1; x < c; ++x) {
        if (std::gcd(x, c) != 1) continue;
        i64 xb = mod_inverse(x, c).value;
        i64 ax = mulm(a, x, c);
        for (i64 b = 0; b < c; ++b) row[b] += roots[(ax + mulm(b, xb, c)) % c];
    }
    return row;
}

cplx twisted_kloosterman(const DirichletCharacter& chi, i64 r, i64 n, i64 c) {
    if (c < 1) throw DomainError("twisted_kloosterman: modulus must be positive");
    if (c % chi.modulus() != 0)
        throw DomainError("twisted_kloosterman: character modulus " +
                          std::to_string(chi.modulus()) + " does not divide " + std::to_string(c));
    cplx s = 0;
    for (i64 x = 1; x < c; ++x) {
        if (std::gcd(x, c) != 1) continue;
        i64 xb = mod_inverse(x, c).value;
        s += chi(x) * e_frac(mod(mulm(r, x, c) + mulm(n, xb, c), c), c);
    }
    return s;
}

FrakCResult frak_C(const FrakCParams& q) {
    const i64 M = q.M;
    if (M != q.chi.modulus()) throw DomainError("frak_C: character modulus differs from M");
    for (i64 v : {q.p1, q.p2, q.l1, q.l2, q.r1, q.r2})
        if (std::gcd(v, M) != 1)
            throw DomainError("frak_C: parameter " + std::to_string(v) + " not coprime to M");
    i64 l1b = mod_inverse(q.l1, M).value, l2b = mod_inverse(q.l2, M).value;
    FrakCResult out;
    // brute force over a mod M
    std::vector<cplx> roots = unit_roots(M);
    for (i64 a = 0; a < M; ++a) {
        i64 n1 = mulm(mulm(a, q.p1, M), l1b, M);
        i64 n2 = mulm(mulm(a, q.p2, M), l2b, M);
        cplx s1 = 0, s2 = 0;
        for (i64 x = 1; x < M; ++x) {
            i64 xb = mod_inverse(x, M).value;
            s1 += q.chi(x) * roots[(mulm(q.r1, x, M) + mulm(n1, xb, M)) % M];
            s2 += q.chi(x) * roots[(mulm(q.r2, x, M) + mulm(n2, xb, M)) % M];
        }
        out.brute += s1 * std::conj(s2);
    }
    i64 lhs = mulm(mulm(q.l2, q.r1, M), q.p1, M);
    i64 rhs = mulm(mulm(q.l1, q.r2, M), q.p2, M);
    out.congruent = lhs == rhs;
    i64 arg = mulm(mulm(q.p1, mod_inverse(q.p2, M).value, M), mulm(l1b, q.l2, M), M);
    out.closed = static_cast<double>(M) * q.chi(arg) *
                 (static_cast<double>(out.congruent ? M : 0) - 1.0);
    return out;
}

cplx zero_frequency_C(i64 p1, i64 p2, i64 l, i64 r, i64 m) {
    if (m < 1 || (l * r) % m != 0) throw DomainError("zero_frequency_C: m must divide l r");
    i64 q = l * r / m;
    if (std::gcd(p1 * p2, q) != 1) throw DomainError("zero_frequency_C: gcd(p1 p2, l r/m) != 1");
    i64 u = mod(mod_inverse(p1, q).value - mod_inverse(p2, q).value, q);
    return static_cast<double>(q) * static_cast<double>(ramanujan_sum(q, u));
}

cplx correlation_from_definition(i64 p1, i64 p2, i64 l1, i64 l2, i64 r, i64 m, i64 M, i64 n) {
    if (m < 1 || (l1 * r) % m != 0 || (l2 * r) % m != 0)
        throw DomainError("correlation_from_definition: m must divide l_i r");
    i64 s1 = l1 * r / m, s2 = l2 * r / m;
    if (std::gcd(p1 * M, s1) != 1 || std::gcd(p2 * M, s2) != 1)
        throw DomainError("correlation_from_definition: p_i M must be a unit mod l_i r/m");
    i64 Q = std::lcm(s1, s2);
    i64 u1 = mulm(mod_inverse(p1, s1).value, M, s1);
    i64 u2 = mulm(mod_inverse(p2, s2).value, M, s2);
    std::vector<cplx> k1(static_cast<std::size_t>(s1)), k2(static_cast<std::size_t>(s2));
    for (i64 a = 0; a < s1; ++a) k1[a] = kloosterman(u1, a, s1);
    for (i64 a = 0; a < s2; ++a) k2[a] = kloosterman(u2, a, s2);
    cplx s = 0;
    for (i64 a = 0; a < Q; ++a) s += k1[a % s1] * k2[a % s2] * e_frac(mulm(a, n, Q), Q);
    return s;
}

CorrelationParams correlation_lemma_params(i64 p1, i64 p2, i64 l1, i64 l2, i64 r, i64 m, i64 M,
                                           i64 n) {
    i64 s1 = l1 * r / m, s2 = l2 * r / m;
    CorrelationParams c;
    c.s1 = s1;
    c.s2 = s2;
    c.t1 = mulm(mod_inverse(p1, s1).value, M, s1);
    c.t2 = mulm(mod_inverse(p2, s2).value, M, s2);
    c.n = n;
    return c;
}

cplx zero_frequency_C_definition(i64 p1, i64 p2, i64 l, i64 r, i64 m, i64 M) {
    return correlation_from_definition(p1, p2, l, l, r, m, M, 0);
}

}  // namespace gl3

namespace gl3 {

FrakCScanReport frak_C_scan(i64 M, int threads) {
    FrakCScanReport rep;
    rep.M = M;
    rep.tolerance = 1e-6 * static_cast<double>(M) * static_cast<double>(M);
    const i64 m1 = M - 1;
    std::vector<i64> inv(static_cast<std::size_t>(M), 0);
    for (i64 x = 1; x < M; ++x) inv[x] = mod_inverse(x, M).value;
    std::vector<FrakCScanReport> parts(static_cast<std::size_t>(M - 2));
    parallel_items(static_cast<std::size_t>(M - 2), threads, [&](std::size_t idx) {
        const i64 k = static_cast<i64>(idx) + 1;
        auto chi = build_character(M, k);
        // T[r][b] = S_chi(r, b; M)
        std::vector<cplx> T(static_cast<std::size_t>(M * M));
        for (i64 r = 0; r < M; ++r)
            for (i64 b = 0; b < M; ++b) T[r * M + b] = twisted_kloosterman(chi, r, b, M);
        FrakCScanReport& pt = parts[idx];
        for (i64 p1 = 1; p1 <= m1; ++p1)
            for (i64 l1 = 1; l1 <= m1; ++l1) {
                const i64 u1 = p1 * inv[l1] % M;
                for (i64 p2 = 1; p2 <= m1; ++p2)
                    for (i64 l2 = 1; l2 <= m1; ++l2) {
                        const i64 u2 = p2 * inv[l2] % M;
                        const cplx ch = chi(p1 * inv[p2] % M * inv[l1] % M * l2 % M);
                        for (i64 r1 = 1; r1 <= m1; ++r1)
                            for (i64 r2 = 1; r2 <= m1; ++r2) {
                                cplx brute = 0;
                                for (i64 a = 0; a < M; ++a)
                                    brute += T[r1 * M + a * u1 % M] *
                                             std::conj(T[r2 * M + a * u2 % M]);
                                bool cong = (l2 * r1 % M) * p1 % M == (l1 * r2 % M) * p2 % M;
                                cplx closed = static_cast<double>(M) * ch *
                                              (static_cast<double>(cong ? M : 0) - 1.0);
                                double err = std::abs(brute - closed);
                                ++pt.tuples;
                                pt.congruent_tuples += cong;
                                if (err > rep.tolerance) ++pt.violations;
                                pt.max_abs_error = std::max(pt.max_abs_error, err);
                            }
                    }
            }
    });
    for (auto& pt : parts) {
        rep.tuples += pt.tuples;
        rep.violations += pt.violations;
        rep.congruent_tuples += pt.congruent_tuples;
        rep.max_abs_error = std::max(rep.max_abs_error, pt.max_abs_error);
    }
    return rep;
}

}  // namespace gl3
