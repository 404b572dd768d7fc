#include <array>
#include <optional>

#include "gl3/decomposition.hpp"
#include "gl3/errors.hpp"

namespace gl3 {

namespace {

// a . (pi_P, pi_L, delta, z) <= b
struct Halfspace {
    std::array<Rational, 4> a;
    Rational b;
};

std::optional<std::array<Rational, 4>> solve4(std::array<std::array<Rational, 5>, 4> A) {
    for (int col = 0; col < 4; ++col) {
        int piv = -1;
        for (int r = col; r < 4; ++r)
            if (A[r][col] != Rational(0)) {
                piv = r;
                break;
            }
        if (piv < 0) return std::nullopt;
        std::swap(A[col], A[piv]);
        for (int r = 0; r < 4; ++r) {
            if (r == col || A[r][col] == Rational(0)) continue;
            Rational f = A[r][col] / A[col][col];
            for (int k = col; k < 5; ++k) A[r][k] -= f * A[col][k];
        }
    }
    std::array<Rational, 4> x;
    for (int i = 0; i < 4; ++i) x[i] = A[i][4] / A[i][i];
    return x;
}

bool lex_less(const std::array<Rational, 4>& u, const std::array<Rational, 4>& v) {
    // z, then delta, pi_P, pi_L
    for (int i : {3, 2, 0, 1}) {
        if (u[i] < v[i]) return true;
        if (v[i] < u[i]) return false;
    }
    return false;
}

}  // namespace

std::vector<ExponentTerm> standard_exponent_terms() {
    using R = Rational;
    return {
        {R(1, 2), R(1), R(-1, 2), R(0)},
        {R(5, 8), R(1, 4), R(1, 4), R(0)},
        {R(1), R(-1), R(0), R(0)},
        {R(3, 4), R(-1), R(1), R(1, 2)},
        {R(3, 4), R(0), R(0), R(-1, 2)},
    };
}

ExponentSolution optimize_exponents(const std::vector<ExponentTerm>& terms) {
    if (terms.empty()) throw DomainError("optimize_exponents: no terms");
    std::vector<Halfspace> H;
    for (const auto& t : terms) H.push_back({{t.cP, t.cL, t.cD, Rational(-1)}, -t.c0});
    // pi_L + delta/2 <= 1/4; strictness is checked on the result
    H.push_back({{Rational(0), Rational(1), Rational(1, 2), Rational(0)}, Rational(1, 4)});
    for (int v = 0; v < 3; ++v) {
        std::array<Rational, 4> lo{}, hi{};
        lo[v] = -1;
        hi[v] = 1;
        H.push_back({lo, Rational(0)});
        H.push_back({hi, Rational(1)});
    }

    std::optional<std::array<Rational, 4>> best;
    const std::size_t m = H.size();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            for (std::size_t k = j + 1; k < m; ++k)
                for (std::size_t l = k + 1; l < m; ++l) {
                    std::array<std::array<Rational, 5>, 4> A;
                    std::size_t idx[4] = {i, j, k, l};
                    for (int r = 0; r < 4; ++r) {
                        for (int c = 0; c < 4; ++c) A[r][c] = H[idx[r]].a[c];
                        A[r][4] = H[idx[r]].b;
                    }
                    auto x = solve4(A);
                    if (!x) continue;
                    bool feasible = true;
                    for (const auto& h : H) {
                        Rational s = 0;
                        for (int c = 0; c < 4; ++c) s += h.a[c] * (*x)[c];
                        if (s > h.b) {
                            feasible = false;
                            break;
                        }
                    }
                    if (feasible && (!best || lex_less(*x, *best))) best = x;
                }
    if (!best) throw NumericalError("optimize_exponents: no feasible vertex");

    ExponentSolution sol;
    sol.pi_P = (*best)[0];
    sol.pi_L = (*best)[1];
    sol.delta = (*best)[2];
    sol.final_exponent = (*best)[3];
    if (sol.pi_L + sol.delta / 2 == Rational(1, 4))
        throw NumericalError("optimize_exponents: optimum lies on the boundary L = (Mt)^{1/4 - delta/2}");
    for (std::size_t i = 0; i < terms.size(); ++i)
        if (terms[i].eval(sol.pi_P, sol.pi_L, sol.delta) == sol.final_exponent) sol.active.push_back(static_cast<int>(i));
    sol.L_below_P = sol.pi_L < sol.pi_P;
    return sol;
}

ExponentSolution optimize_exponents() { return optimize_exponents(standard_exponent_terms()); }

std::string to_string(const Rational& q) {
    if (q.denominator() == 1) return std::to_string(q.numerator());
    return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

}  // namespace gl3
