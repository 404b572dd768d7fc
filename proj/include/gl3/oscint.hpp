#pragma once

#include <cstdint>
#include <vector>

#include "gl3/jet.hpp"
#include "gl3/quadrature.hpp"
#include "gl3/weight.hpp"

namespace gl3 {

enum class PhaseKind { key_lemma_phase, J_it_phase, frakJ_phase };

// Integrand x^{-it} e(-n t/(N x)) V(x) e(-r N p x/(M^2 l t)), i.e. V(x) e(f(x)) with
// f(x) = -t log x/(2 pi) - n t/(N x) - r N p x/(M^2 l t).
// For the frakJ phase n is N y, so it is kept real.
struct OscillatorySpec {
    double t = 100;
    double N = 1e4;
    std::int64_t M = 7;
    double n = 0;
    std::int64_t r = 0;
    std::int64_t p = 1;
    std::int64_t l = 1;
    SmoothWeight weight;
    PhaseKind kind = PhaseKind::J_it_phase;

    void validate() const;
    double linear_coefficient() const;  // r N p/(M^2 l t)
    double phase(double x) const;
    double phase_d1(double x) const;
    double phase_d2(double x) const;
    Jet phase_jet(double x, int order) const;
};

QuadResult integrate_oscillatory(const OscillatorySpec& spec, double abs_tol = 1e-12,
                                 long max_evaluations = 20'000'000);

struct StationaryPointReport {
    double x0 = 0;
    double f_second_at_x0 = 0;
    cplx leading_term;
    double error_estimate = 0;  // size of the first correction term
    bool other_branch = false;  // a second stationary point may exist (r < 0)
};

StationaryPointReport stationary_phase_main_term(const OscillatorySpec& spec);

double derivative_test_bound(const OscillatorySpec& spec, int order);

struct TruncationReport {
    std::int64_t R_max = 0;
    double scale = 0;   // M^2 t^2 L/(N P)
    double xi_star = 0; // frequencies beyond this are certified negligible
    int order = 0;      // integration-by-parts order achieving xi_star
};

// Certified cutoff over p ~ P, l ~ L, n/N in [y_lo, y_hi].
TruncationReport truncation_cutoff(std::int64_t M, double t, double N, double P, double L,
                                   const SmoothWeight& V, double threshold = 1e-12,
                                   double y_lo = 1.0, double y_hi = 2.0, int max_order = 40);

// min_k ||g^{(k)}||_1/(2 pi xi)^k with g(x) = x^{-it} e(-y t/x) V(x)
double fourier_decay_bound(double t, double y, const SmoothWeight& V, double xi,
                           int max_order = 40);

// frakJ

struct FrakJTriple {
    std::int64_t r = 1, p = 1, l = 1;
};

struct FrakJParams {
    FrakJTriple a, b;
    std::int64_t M = 7;
    double t = 100;
    double N = 1e4;
    SmoothWeight V;
    SmoothWeight w;
};

struct FrakJResult {
    cplx value;
    double error = 0;
    double z1 = 0, z2 = 0;
    bool in_regime = false;
    double delta_bound = 0;  // M^2 l1 l2/(N |l1 r2 p2 - l2 r1 p1|), infinite when equal
};

double frakJ_z(const FrakJTriple& tr, std::int64_t M, double t, double N);
double frakJ_stationary_point(double z, double y);
double frakJ_phi(double z1, double z2, double y);
double frakJ_phi_derivative(double z1, double z2, double y);

FrakJResult frak_J(const FrakJParams& params, double abs_tol = 1e-10);

struct FrakJScanPoint {
    FrakJParams params;
    FrakJResult result;
};

struct FrakJScanReport {
    std::vector<FrakJScanPoint> points;
    double C1 = 0;  // max |frakJ| t
    double C2 = 0;  // max |frakJ|/delta_bound over distinct z
    double phi_derivative_max_error = 0;
    int out_of_regime = 0;
};

FrakJScanReport frak_J_bound_scan(int points, const std::vector<double>& ts, std::uint64_t seed,
                                  int threads);

}  // namespace gl3
