#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "gl3/characters.hpp"
#include "gl3/numeric.hpp"
#include "gl3/provider.hpp"
#include "gl3/weight.hpp"

namespace gl3 {

struct ExperimentConfig {
    i64 M = 7;
    i64 k = 1;  // character index
    double t = 100;
    double N = 1e4;
    i64 P = 2, L = 3;  // primes p in [P, 2P] and l in [L, 2L], M excluded
    CoefficientProvider provider = d3_provider();
    SmoothWeight w = SmoothWeight::bump(1, 2);
    SmoothWeight V = SmoothWeight::bump(3, 22);
    double tolerance = 1e-6;
    std::uint64_t seed = 1;
    int threads = 1;
    // when non-empty these replace the dyadic prime segments
    std::vector<i64> p_list, l_list;

    void validate() const;
    DirichletCharacter character() const { return DirichletCharacter(M, k); }
    std::vector<i64> p_primes() const;
    std::vector<i64> l_primes() const;
};

// sum lambda(1, n) chi(n) n^{-it} w(n/N); any real t is accepted here
cplx S_N(const ExperimentConfig& cfg);

// sum_r chi(r) r^{-it} e(-n p Mbar/(l r)) V(r/R), R = N p/(M l t)
cplx key_identity_lhs(const ExperimentConfig& cfg, i64 p, i64 l, i64 n);

// int x^{-it} e(-n t/(N x)) V(x) e(-r N p x/(M^2 l t)) dx on a composite Gauss grid
cplx J_it(const ExperimentConfig& cfg, i64 r, i64 p, i64 l, double n);

struct KeyIdentityReport {
    i64 p = 0, l = 0, n = 0;
    cplx lhs;
    cplx zero_term;  // r = 0 after Poisson
    cplx dual_sum;   // 0 < |r| <= R_max
    i64 R_max = 0;
    double rel_error_exact = 0;  // |lhs - zero_term - dual_sum| / |lhs|
    cplx main_term;              // stationary-phase main term
    double residual_stationary = 0;  // |lhs - main_term - dual_sum|
    double integral_residual = 0;    // |J_it(0) - leading term|
    double predicted_phase = 0;
    double extracted_phase = 0;  // arg(lhs - dual_sum)
    double phase_error = 0;
};

KeyIdentityReport key_identity_check(const ExperimentConfig& cfg, i64 p, i64 l, i64 n);

// sum over p, l, r, n as in the amplified sum
cplx F1_sum(const ExperimentConfig& cfg);
// the part of F1_sum with p | r
cplx F1_sharp_sum(const ExperimentConfig& cfg);

struct DualTerms {
    cplx zero;     // r = 0 contribution to F1
    cplx O_exact;  // r != 0 contribution to F1, with the weights p/P^2 and 1/l that arise
    cplx O_normalized;  // t^{1/2}/(M^{1/2} P L) sum_n sum_p sum_l sum_{r != 0} ...
    i64 R_max = 0;
    std::size_t nodes = 0;
};

DualTerms dual_terms(const ExperimentConfig& cfg);
cplx O_sum(const ExperimentConfig& cfg);

// V_A(2 pi n/N) from the stationary-phase leading term of J_it(0, n)
cplx V_A(const ExperimentConfig& cfg, double n);

struct ConnectionReport {
    cplx F1, zero, O_exact, O_normalized;
    cplx lhs;        // sum lambda(1, n) chi(n) n^{-it} w(n/N) V_A(2 pi n/N)
    cplx prefactor;  // (2 pi/Mt)^{-it} e(-t/2pi) g/sqrt(M) (sum_p p/P^2)(sum_l 1/l)
    cplx ratio;      // (F1 - O_exact)/(prefactor lhs)
    double residual = 0;  // |ratio - 1|
    double poisson_rel_error = 0;  // |F1 - zero - O_exact| / |F1|
};

ConnectionReport connection_check(const ExperimentConfig& cfg);

struct EnvelopeReport {
    double F1_abs = 0, F1_envelope = 0, F1_ratio = 0;
    double O_abs = 0, O_envelope = 0, O_ratio = 0;
    double F1_sharp_abs = 0, F1_sharp_envelope = 0, F1_sharp_ratio = 0;
};

// N^{3/2}P/(M t L^{1/2}) + N^{3/4}(M t P L)^{1/4}, N^{1/2}M t/P + M^{3/2}t^{3/2}L/P, N^{3/2}/(P M t)
EnvelopeReport envelope_check(const ExperimentConfig& cfg);

// exponents

using Rational = boost::rational<long long>;

// c0 + cP pi_P + cL pi_L + cD delta
struct ExponentTerm {
    Rational c0, cP, cL, cD;
    Rational eval(Rational pP, Rational pL, Rational d) const { return c0 + cP * pP + cL * pL + cD * d; }
};

struct ExponentSolution {
    Rational pi_P, pi_L, delta, final_exponent;
    std::vector<int> active;  // terms attaining the maximum
    bool L_below_P = false;
};

std::vector<ExponentTerm> standard_exponent_terms();

// Minimizes the largest term subject to pi_L + delta/2 < 1/4 and 0 <= pi_P, pi_L, delta <= 1.
// Ties are broken by the smallest delta, then pi_P, then pi_L.
ExponentSolution optimize_exponents(const std::vector<ExponentTerm>& terms);
ExponentSolution optimize_exponents();

std::string to_string(const Rational& q);

}  // namespace gl3
