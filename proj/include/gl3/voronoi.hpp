#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gl3/bessel3.hpp"
#include "gl3/numeric.hpp"
#include "gl3/provider.hpp"
#include "gl3/weight.hpp"

namespace gl3 {

// Combination of k+1 copies base(y / exp(0.2 i)), i = 0..k, whose log moments
// int V(y) (log y)^j dy vanish for j < k, rescaled to unit sup norm.
SmoothWeight annihilate_log_moments(const SmoothWeight& base, int k);
// condition number of the k x (k+1) moment system used above
double annihilation_condition(const SmoothWeight& base, int k);

// W^+-(x) on [x_lo, x_hi] from Chebyshev panels in u = x^{1/3}; outside the
// interpolated range the Mellin sum is used directly.
class HankelInterpolant {
public:
    HankelInterpolant(const SmoothWeight& w, const SpectralParams& p, double x_lo, double x_hi,
                      double T = 3000.0, double panel_width = 0.25, int nodes = 24);
    HankelInterpolant(const HankelTransform& H, double x_lo, double x_hi, double panel_width = 0.25,
                      int nodes = 24);
    cplx W(double x, int sign) const;
    // (W^+(x), W^-(x))
    std::pair<cplx, cplx> W_pair(double x) const;
    // largest |interpolant - direct| seen at panel midpoints
    double interpolation_error() const { return interp_error_; }
    double x_lo() const { return x_lo_; }
    double x_hi() const { return x_hi_; }
    const HankelTransform& transform() const { return H_; }

private:
    cplx eval_panel(std::size_t panel, double u, int parity) const;

    HankelTransform H_;
    double x_lo_, x_hi_, u_lo_, h_;
    int nodes_;
    std::vector<double> cheb_;  // nodes on [-1, 1]
    std::vector<double> bary_;
    std::vector<cplx> v0_, v1_;  // A_delta, A_{delta+e} at the panel nodes
    double interp_error_ = 0;
};

// Envelope of |U^+-(x)| = x |W^+-(x)| for x >= x0. Block maxima of |U| sampled in
// u = x^{1/3} cover [u0, 2 u0]; beyond 2 u0 the model a exp(-b u^{1/2}), fitted to the
// block maxima and shifted to dominate all of them, is used.
class TailEnvelope {
public:
    TailEnvelope(const HankelTransform& H, double x0, double block = 1.0, double step = 0.02);
    double operator()(double x) const;
    double model(double u) const;
    bool valid() const { return valid_; }
    double u0() const { return u0_; }
    double u_model() const { return u0_ + block_ * static_cast<double>(max_.size()); }
    double block() const { return block_; }
    const std::vector<double>& block_maxima() const { return max_; }
    double log_a() const { return log_a_; }
    double b() const { return b_; }

private:
    double u0_, block_;
    std::vector<double> max_;
    double log_a_ = 0, b_ = 0;
    bool valid_ = false;
};

// C = max |U^+-(y)| / sqrt(y) over a log grid of [y_lo, y_hi]
double jacquet_shalika_constant(const HankelTransform& H, double y_lo = 1e-3, double y_hi = 10.0,
                                int points = 400);

// sum over n of lambda(m, n) e(-n a / c) w(n / N)
cplx voronoi_lhs(const CoefficientProvider& provider, std::int64_t m, std::int64_t a, std::int64_t c,
                 const SmoothWeight& w, double N);

enum class DualNormalization {
    x_times_W,    // (N m'^2 n / m c^3) W^+-(N m'^2 n / m c^3)
    usual_form,   // U^+-(m'^2 n / m c^3) with U(x) = x int w(y/N) J(-+x y) dy
};

struct DualSum {
    cplx value;
    double x_cut = 0;         // dual terms with N m'^2 n / (m c^3) <= x_cut are summed
    std::uint64_t y_cut = 0;  // largest m'^2 n summed
    double tail_bound = 0;
    std::uint64_t terms = 0;
    double interpolation_error = 0;
};

// Right side c sum_+- sum_{m' | mc} sum_n lambda(n, m')/(m' n) S(abar m, +-n; mc/m') U^+-(...).
// The cut is raised until the certified tail is below `tolerance` times the partial sum.
DualSum voronoi_rhs_detail(const CoefficientProvider& provider, std::int64_t m, std::int64_t a,
                           std::int64_t c, const SmoothWeight& w, double N, double tolerance = 1e-5,
                           DualNormalization norm = DualNormalization::x_times_W);
cplx voronoi_rhs(const CoefficientProvider& provider, std::int64_t m, std::int64_t a, std::int64_t c,
                 const SmoothWeight& w, double N, double tolerance = 1e-5);

enum class PolarHandling { cuspidal, annihilated_moments, skipped };

struct VoronoiPoint {
    std::int64_t m = 1, a = 1, c = 1;
    double N = 1000;
};

struct VoronoiReport {
    VoronoiPoint point;
    cplx lhs, rhs;
    PolarHandling polar_handling = PolarHandling::cuspidal;
    double x_cut = 0;
    std::uint64_t y_cut = 0;
    double tail_bound = 0;
    double rel_error = 0;
    bool skipped = false;
    std::string error;  // set when the point failed; the run continues
    double seconds = 0;
};

double voronoi_rel_error(cplx lhs, cplx rhs);

// Non-cuspidal providers require w.annihilated_log_moments() >= 3 (PreconditionError).
std::vector<VoronoiReport> verify_voronoi(const CoefficientProvider& provider,
                                          const std::vector<VoronoiPoint>& grid, const SmoothWeight& w,
                                          double tolerance = 1e-5, int threads = 1);

// Standard test weight: bump on [1, 8] with three log moments annihilated.
SmoothWeight voronoi_default_weight();

}  // namespace gl3
