#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gl3/arith.hpp"
#include "gl3/characters.hpp"
#include "gl3/numeric.hpp"
#include "gl3/provider.hpp"

namespace gl3 {

// S(a,b;c) = sum over units x mod c of e((a x + b xbar)/c)
cplx kloosterman(i64 a, i64 b, i64 c);
// S(a, b; c) for every b mod c
std::vector<cplx> kloosterman_row(i64 a, i64 c);

// S_chi(r,n;c) = sum over units alpha mod c of chi(alpha) e((r alpha + n alphabar)/c)
cplx twisted_kloosterman(const DirichletCharacter& chi, i64 r, i64 n, i64 c);

// ---- Weil bound scan -------------------------------------------------------

struct WeilScanReport {
    i64 c_max = 0;
    std::uint64_t sums_checked = 0;
    std::uint64_t violations = 0;
    double max_ratio = 0;  // max |S| / (tau(c) gcd(a,b,c)^{1/2} c^{1/2})
    i64 worst_a = 0, worst_b = 0, worst_c = 1;
    i64 oracle_c_max = 0;
    double oracle_max_diff = 0;  // FFT rows vs direct summation
    double seconds = 0;
};
WeilScanReport weil_scan(i64 c_max, int threads, i64 oracle_c_max = 40);

// ---- correlation sums ----------------------------------------------------------

struct CorrelationParams {
    i64 s1 = 1, s2 = 1;
    i64 t1 = 0, t2 = 0, n = 0;
};

cplx correlation_sum(const CorrelationParams& p);
// C(n) for every n mod [s1,s2] through one DFT
std::vector<cplx> correlation_sum_all_n(i64 s1, i64 s2, i64 t1, i64 t2);
i64 correlation_delta(const CorrelationParams& p);
// (s1 s2 [s1,s2])^{1/2} (Delta,n,s1,s2) / (n,s1,s2)^{1/2}
double correlation_bound_base(const CorrelationParams& p);

// C_{l1,l2}(n) straight from its definition with arguments pbar_i M mod l_i r/m
cplx correlation_from_definition(i64 p1, i64 p2, i64 l1, i64 l2, i64 r, i64 m, i64 M, i64 n);
// the same sum written in the (s_i, t_i) form with t_i = pbar_i M mod s_i
CorrelationParams correlation_lemma_params(i64 p1, i64 p2, i64 l1, i64 l2, i64 r, i64 m, i64 M,
                                           i64 n);

struct CorrelationScanReport {
    i64 s_max = 0;
    std::uint64_t cases = 0, values = 0;
    double c0 = 0;  // fitted constant in 2^{c0 omega}
    CorrelationParams worst;
    std::uint64_t trivial_violations = 0;  // omega = 0 cases exceeding the base bound
    double seconds = 0;
};
CorrelationScanReport correlation_scan(i64 s_max, int t_samples, std::uint64_t seed, int threads);

// ---- frak C and zero frequency ----------------------------------------------

struct FrakCParams {
    i64 M = 0;
    DirichletCharacter chi;
    i64 p1 = 1, p2 = 1, l1 = 1, l2 = 1, r1 = 1, r2 = 1;
};

struct FrakCResult {
    cplx brute;
    cplx closed;
    bool congruent = false;  // l2 r1 p1 = l1 r2 p2 mod M
};
FrakCResult frak_C(const FrakCParams& params);

// (l r/m) c_{l r/m}(pbar1 - pbar2)
cplx zero_frequency_C(i64 p1, i64 p2, i64 l, i64 r, i64 m);
// C_{l,l}(0) evaluated from the definition of C_{l1,l2}(n)
cplx zero_frequency_C_definition(i64 p1, i64 p2, i64 l, i64 r, i64 m, i64 M);

// ---- spacing -----------------------------------------------------------

struct SpacingResult {
    i64 P = 0, L = 0, R = 0;
    std::optional<i64> modulus;
    // |l1 r2 p2 - l2 r1 p1| -> number of 6-tuples with that nonzero difference;
    // the exact sum is the rational number sum count/d
    std::map<u64, u64> difference_counts;
    long double value = 0;
    u64 tuples = 0;
    double comparison = 0;  // L P R + min(L,P,R)^2
    double ratio = 0;
    std::string exact_rational() const;  // numerator/denominator, small cases only
};
SpacingResult spacing_sum(i64 P, i64 L, i64 R, std::optional<i64> modulus_filter = std::nullopt);

// ---- Miller scan ------------------------------------------------------------

struct MillerReport {
    std::vector<i64> X;
    std::vector<double> max_abs;            // max over minor-arc alpha of |sum_{n<=X}|
    std::vector<double> alphas;             // minor-arc samples used
    std::vector<std::pair<std::string, std::vector<double>>> rational_points;  // "a/q" -> |sum|
    double exponent = 0;                    // least-squares slope of log max_abs vs log X
    double seconds = 0;
};
MillerReport miller_scan(i64 X_max, int alpha_samples, const CoefficientProvider& provider,
                         std::uint64_t seed, int threads, i64 X_min = 1000, int per_decade = 4);

}  // namespace gl3

namespace gl3 {

// Exhaustive comparison of the brute-force and closed-form frak C over all
// p_i, l_i, r_i in [1, M-1] and every primitive character mod M.
struct FrakCScanReport {
    i64 M = 0;
    std::uint64_t tuples = 0, violations = 0;
    double max_abs_error = 0;
    double tolerance = 0;  // 1e-6 M^2
    std::uint64_t congruent_tuples = 0;
};
FrakCScanReport frak_C_scan(i64 M, int threads);

}  // namespace gl3
