#include <cmath>

#include "gl3/bessel3.hpp"
#include "gl3/errors.hpp"
#include "gl3/quadrature.hpp"

namespace gl3 {

namespace {

constexpr int anchor_every = 64;

// w~(sigma + i n dtau) = int w(y) y^{-sigma - i n dtau} dy for n = 0..count-1
std::vector<cplx> mellin_grid(const SmoothWeight& w, double sigma, double dtau, std::size_t count,
                              double T) {
    std::vector<double> t, a;
    for (const auto& c : w.components()) {
        double t0 = std::log(c.lo), t1 = std::log(c.hi);
        int panels = static_cast<int>(std::ceil(T * (t1 - t0) / (2 * two_pi))) + 16;
        NodeSet ns = composite_nodes(t0, t1, panels, 20);
        for (std::size_t k = 0; k < ns.x.size(); ++k) {
            double y = std::exp(ns.x[k]);
            double u = (2 * y - c.lo - c.hi) / (c.hi - c.lo);
            double q = 1 - u * u;
            if (q <= 0) continue;
            double b = c.coef * std::exp(-u * u / q);
            if (b == 0) continue;
            t.push_back(ns.x[k]);
            a.push_back(ns.w[k] * b * std::exp((1 - sigma) * ns.x[k]));
        }
    }
    const std::size_t K = t.size();
    std::vector<cplx> cur(K), rot(K);
    std::vector<cplx> out(count);
    for (std::size_t n = 0; n < count; ++n) {
        if (n % anchor_every == 0) {
            for (std::size_t k = 0; k < K; ++k) {
                cur[k] = a[k] * std::polar(1.0, -static_cast<double>(n) * dtau * t[k]);
                if (n == 0) rot[k] = std::polar(1.0, -dtau * t[k]);
            }
        }
        cplx s = 0;
        for (std::size_t k = 0; k < K; ++k) {
            s += cur[k];
            cur[k] *= rot[k];
        }
        out[n] = s;
    }
    return out;
}

}  // namespace

HankelTransform::HankelTransform(const SmoothWeight& w, const SpectralParams& p, double sigma, double T,
                                 double dtau)
    : params_(p), sigma_(sigma), T_(T), dtau_(dtau) {
    p.validate();
    if (!(T > 0) || !(dtau > 0)) throw DomainError("HankelTransform: T and dtau must be positive");
    for (auto a : p.alpha)
        if (!(sigma + a.real() > 0)) throw DomainError("HankelTransform: sigma must exceed max(-Re alpha)");
    const std::size_t half = static_cast<std::size_t>(std::llround(T / dtau));
    T_ = static_cast<double>(half) * dtau;
    std::vector<cplx> wt = mellin_grid(w, sigma, dtau, half + 1, T_);
    const std::size_t n = 2 * half + 1;
    g0_.resize(n);
    g1_.resize(n);
    const SpectralParams q = p.flipped();
    double tail = 0, mass = 0;
    for (std::size_t i = 0; i < n; ++i) {
        long k = static_cast<long>(i) - static_cast<long>(half);
        cplx m = k >= 0 ? wt[static_cast<std::size_t>(k)] : std::conj(wt[static_cast<std::size_t>(-k)]);
        cplx s(sigma, static_cast<double>(k) * dtau);
        g0_[i] = gamma_factor(s, p) * m;
        g1_[i] = gamma_factor(s, q) * m;
        double a = std::abs(g0_[i]) + std::abs(g1_[i]);
        mass += a;
        if (std::abs(static_cast<double>(k) * dtau) > 0.9 * T_) tail += a;
    }
    tail_mass_ = tail * dtau / two_pi;
    abs_mass_ = mass * dtau / (2 * two_pi);
}

cplx HankelTransform::sum(const std::vector<cplx>& g, double x) const {
    const double lx = std::log(x);
    const std::size_t n = g.size();
    const cplx rot = std::polar(1.0, -dtau_ * lx);
    cplx cur, acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i % anchor_every == 0) cur = std::polar(1.0, -(static_cast<double>(i) * dtau_ - T_) * lx);
        double wgt = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
        acc += wgt * g[i] * cur;
        cur *= rot;
    }
    return acc * (dtau_ / two_pi) * std::exp(-sigma_ * lx);
}

std::pair<cplx, cplx> HankelTransform::parts(double x) const {
    if (!(x > 0)) throw DomainError("HankelTransform: x must be positive");
    return {sum(g0_, x), sum(g1_, x)};
}

cplx HankelTransform::operator()(double x, int sign) const {
    if (sign != 1 && sign != -1) throw DomainError("HankelTransform: sign must be +1 or -1");
    auto [a0, a1] = parts(x);
    return 0.5 * (a0 - static_cast<double>(sign) * a1);
}

cplx hankel_transform(const SmoothWeight& w, double N, double x, int sign, const SpectralParams& p) {
    if (!(N > 0)) throw DomainError("hankel_transform: N must be positive");
    return N * HankelTransform(w, p)(N * x, sign);
}

}  // namespace gl3
