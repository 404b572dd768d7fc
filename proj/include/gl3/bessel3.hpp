#pragma once

#include <map>
#include <mutex>
#include <shared_mutex>
#include <tuple>
#include <vector>

#include "gl3/numeric.hpp"
#include "gl3/spectral.hpp"
#include "gl3/weight.hpp"

namespace gl3 {

// G_delta(s) = 2(2pi)^{-s} Gamma(s) cos(pi s/2)  (delta = 0)
//            = 2i(2pi)^{-s} Gamma(s) sin(pi s/2) (delta = 1)
cplx log_gamma(cplx z);
cplx log_gamma_factor_single(cplx s, int delta);
// sum_j log G_{delta_j}(s + alpha_j)
cplx log_gamma_factor(cplx s, const SpectralParams& p);
cplx gamma_factor(cplx s, const SpectralParams& p);

struct KernelValue {
    cplx value;
    double truncation_error = 0;
};

// J(+-x) = (j_delta(x) +- j_{delta+e}(x))/2 with j(x) = (1/2 pi i) int G(s) x^{-s} ds.
// The contour is Re s = sigma0 + sigma_shift for |Im s| <= tau_b, continued by rays of
// slope -1 to the left. `precision` digits request a truncation error below
// 10^{-precision/2}; above 30 digits the integral is done in quad precision.
KernelValue bessel_kernel(double x, int sign, const SpectralParams& p, int precision = 30,
                          double sigma_shift = 0.0);

// x^j (d/dx)^j J(+-x)
KernelValue bessel_kernel_derivative(double x, int sign, const SpectralParams& p, int j,
                                     int precision = 30);

double kernel_sigma0(const SpectralParams& p);

// J(+-x^3) = oscillatory + exponential, the oscillatory part coming from the
// gamma-factor terms whose phases all agree.
struct KernelSplit {
    cplx oscillatory;
    cplx exponential;
    double truncation_error = 0;
};
KernelSplit bessel_kernel_split(double x, int sign, const SpectralParams& p);

// e(+-3x)/x sum_{m<K} B_m x^{-m}, approximating J(+-x^3) for x >= x_min.
class AsymptoticExpansion {
public:
    // Least-squares fit of kernel values at 4K points of [x_lo, x_hi], then checked
    // against the kernel at the 4K - 1 midpoints between the samples.
    static AsymptoticExpansion fit(const SpectralParams& p, int sign, int K = 3,
                                   double x_lo = 12.0, double x_hi = 48.0);

    cplx operator()(double x) const;
    int order() const { return static_cast<int>(B_.size()); }
    const std::vector<cplx>& coefficients() const { return B_; }
    double x_min() const { return x_min_; }
    int sign() const { return sign_; }
    double fit_residual() const { return residual_; }
    // max relative error on the held-out midpoints
    double cross_validation_error() const { return cv_error_; }

private:
    std::vector<cplx> B_;
    double x_min_ = 3.0;
    int sign_ = 1;
    double residual_ = 0;
    double cv_error_ = 0;
};

// Cached fit at the default sample window.
const AsymptoticExpansion& bessel_asymptotic_expansion(const SpectralParams& p, int sign, int K = 3);
// approximates J(+-x^3)
cplx bessel_asymptotic(double x, int sign, const SpectralParams& p, int K = 3);

// Thread-safe memo of kernel values.
class KernelCache {
public:
    KernelValue get(double x, int sign, const SpectralParams& p, int precision = 30);
    std::size_t size() const;

private:
    using Key = std::tuple<double, int, double, double, double, double, double, double, int, int,
                           int, int>;
    mutable std::shared_mutex mu_;
    std::map<Key, KernelValue> map_;
};

// W^{+-}(x) = int_0^infty w(y) J(-+x y) dy through the Mellin transform of w along
// Re s = sigma, |Im s| <= T, trapezoid step dtau.
class HankelTransform {
public:
    HankelTransform(const SmoothWeight& w, const SpectralParams& p, double sigma = 0.5,
                    double T = 1500.0, double dtau = 0.1);
    cplx operator()(double x, int sign) const;
    // int G_delta(s) x^{-s} w~(s) ds/(2 pi i) for the two parities
    std::pair<cplx, cplx> parts(double x) const;
    const SpectralParams& params() const { return params_; }
    // (dtau/2pi) sum of |G w~| over |tau| > 0.9 T; the truncated part of the
    // integral is of size tail_mass() x^{-sigma}
    double tail_mass() const { return tail_mass_; }
    // (dtau/4pi) sum of |G_delta w~| + |G_{delta+e} w~|, so |W^+-(x)| <= abs_mass() x^{-sigma}
    // up to the truncated tail
    double abs_mass() const { return abs_mass_; }

private:
    cplx sum(const std::vector<cplx>& g, double x) const;

    SpectralParams params_;
    double sigma_, T_, dtau_;
    double tail_mass_ = 0;
    double abs_mass_ = 0;
    std::vector<cplx> g0_, g1_;  // G w~ on the tau grid, -T..T
};

cplx hankel_transform(const SmoothWeight& w, double N, double x, int sign, const SpectralParams& p);

}  // namespace gl3
