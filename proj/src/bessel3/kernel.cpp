#include <array>
#include <boost/multiprecision/complex128.hpp>
#include <boost/multiprecision/float128.hpp>
#include <cmath>
#include <map>
#include <mutex>

#include "gl3/bessel3.hpp"
#include "gl3/errors.hpp"
#include "gl3/gamma.hpp"
#include "gl3/quadrature.hpp"

namespace gl3 {

namespace {

namespace mp = boost::multiprecision;
using MpReal = mp::float128;
using MpCplx = mp::complex128;

template <class R>
struct Prec;

template <>
struct Prec<double> {
    using C = cplx;
    static constexpr double r0 = 12.0;
    static constexpr int terms = 12;
    static constexpr int nodes = 40;
};

template <>
struct Prec<MpReal> {
    using C = MpCplx;
    static MpReal r0() { return MpReal(20); }
    static constexpr int terms = 24;
    static constexpr int nodes = 50;
};

template <class R>
R prec_r0() {
    if constexpr (std::is_same_v<R, double>)
        return Prec<double>::r0;
    else
        return Prec<R>::r0();
}

template <class R>
struct RuleT {
    std::vector<R> x, w;
};

template <class R>
const RuleT<R>& rule_t(int n) {
    static std::mutex mu;
    static std::map<int, RuleT<R>> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    const GaussRule& g = gauss_legendre(n);
    RuleT<R> r;
    for (int i = 0; i < n; ++i) {
        R x = g.x[i], dp = 0;
        for (int it2 = 0; it2 < 8; ++it2) {
            R p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                R p2 = (R(2 * k - 1) * x * p1 - R(k - 1) * p0) / R(k);
                p0 = p1;
                p1 = p2;
            }
            dp = R(n) * (x * p1 - p0) / (x * x - R(1));
            x -= p1 / dp;
        }
        r.x.push_back(x);
        r.w.push_back(R(2) / ((R(1) - x * x) * dp * dp));
    }
    return cache.emplace(n, std::move(r)).first->second;
}

template <class R>
double to_d(const R& v) {
    return static_cast<double>(v);
}

template <class C>
cplx to_c(const C& v) {
    return {static_cast<double>(real(v)), static_cast<double>(imag(v))};
}

// Integral of f over s0 + u d, u in [a, b], split into panels of length <= h.
template <class R, class C, std::size_t NV, class F>
std::array<C, NV> segment(F&& f, const C& s0, const C& d, double a, double b, double h,
                          double* peak) {
    const RuleT<R>& g = rule_t<R>(Prec<R>::nodes);
    std::array<C, NV> acc;
    acc.fill(C(0));
    int panels = std::max(1, static_cast<int>(std::ceil((b - a) / h)));
    R H = R(b - a) / R(panels);
    for (int p = 0; p < panels; ++p) {
        R c = R(a) + (R(p) + R(0.5)) * H;
        for (std::size_t i = 0; i < g.x.size(); ++i) {
            C s = s0 + (c + H / R(2) * g.x[i]) * d;
            auto v = f(s);
            for (std::size_t k = 0; k < NV; ++k) {
                acc[k] += v[k] * (g.w[i] * H / R(2));
                if (peak) *peak = std::max(*peak, std::abs(to_c(v[k])));
            }
        }
    }
    for (auto& v : acc) v *= d;
    return acc;
}

// Integral of f over s0 + u d for u in [0, infinity). Panels are added until the
// panel maxima decay geometrically and the extrapolated tail is below
// max(abs_target, rel_target * peak).
template <class R, class C, std::size_t NV, class F>
std::array<C, NV> ray(F&& f, const C& s0, const C& d, double h, double abs_target,
                      double rel_target, double& tail_out) {
    std::array<C, NV> acc;
    acc.fill(C(0));
    double peak = 0, prev = -1;
    int decreasing = 0;
    const double dl = std::abs(to_c(d));
    for (int p = 0; p < 4000; ++p) {
        double m = 0;
        auto v = segment<R, C, NV>(f, s0, d, p * h, (p + 1) * h, h, &m);
        for (std::size_t k = 0; k < NV; ++k) acc[k] += v[k];
        peak = std::max(peak, m);
        if (prev >= 0 && m < prev) ++decreasing;
        else decreasing = 0;
        if (decreasing >= 3) {
            double q = m / prev;
            if (q < 0.9) {
                double tail = h * dl * m * q / (1 - q);
                if (tail < std::max(abs_target, rel_target * peak)) {
                    tail_out = tail;
                    return acc;
                }
            }
        }
        prev = m;
    }
    throw ResourceError("bessel kernel: contour truncation bound not met");
}

template <class R, class C>
std::array<C, 3> to_alpha(const SpectralParams& p) {
    std::array<C, 3> a;
    for (int j = 0; j < 3; ++j) a[j] = C(R(p.alpha[j].real()), R(p.alpha[j].imag()));
    return a;
}

// log (2pi)^{-s} Gamma(s) for each shifted argument, and the log cos / log i sin parts
template <class R, class C>
struct GammaParts {
    C base;                 // sum_j log(2 (2pi)^{-s-a_j} Gamma(s+a_j))
    std::array<C, 3> lc, ls;  // log cos(pi(s+a_j)/2), log(i sin(...))
};

template <class R, class C>
GammaParts<R, C> gamma_parts(const C& s, const std::array<C, 3>& alpha, bool trig) {
    const R pi = boost::math::constants::pi<R>();
    const R l2pi = log(R(2) * pi);
    const R l2 = log(R(2));
    GammaParts<R, C> g;
    g.base = C(0);
    for (int j = 0; j < 3; ++j) {
        C z = s + alpha[j];
        g.base += C(l2) - z * l2pi + log_gamma<R>(z, prec_r0<R>(), Prec<R>::terms);
        if (trig) {
            C a = z * (pi / R(2));
            g.lc[j] = log_cos<R>(a);
            g.ls[j] = log_isin<R>(a);
        }
    }
    return g;
}

template <class R>
KernelValue kernel_impl(double x, int sign, const SpectralParams& p, int j, int precision,
                        double sigma_shift) {
    using C = typename Prec<R>::C;
    const auto alpha = to_alpha<R, C>(p);
    const R logx = log(R(x));
    auto f = [&](const C& s) {
        auto g = gamma_parts<R, C>(s, alpha, true);
        C l0 = g.base - s * logx, l1 = l0;
        for (int k = 0; k < 3; ++k) {
            l0 += p.delta[k] == 0 ? g.lc[k] : g.ls[k];
            l1 += p.delta[k] == 0 ? g.ls[k] : g.lc[k];
        }
        C poly(R(1));
        for (int i = 0; i < j; ++i) poly *= -s - C(R(i));
        return std::array<C, 2>{exp(l0) * poly, exp(l1) * poly};
    };
    const double sigma0 = kernel_sigma0(p) + sigma_shift;
    const double tb = std::max(40.0, 1.5 * two_pi * std::cbrt(x));
    const double rate = std::abs(std::log(x)) + 3 * std::log(1 + tb / two_pi) + 6;
    const double h = std::min(2.0, 3 * two_pi / rate) * (precision > 30 ? 0.5 : 1.0);
    const double target = std::pow(10.0, -precision / 2.0);
    const C I(R(0), R(1));
    C top = C(R(sigma0), R(tb)), bottom = C(R(sigma0), R(-tb));
    double t1 = 0, t2 = 0;
    auto mid = segment<R, C, 2>(f, bottom, I, 0.0, 2 * tb, h, nullptr);
    auto up = ray<R, C, 2>(f, top, C(R(-1), R(1)), h, target / 4, 0.0, t1);
    auto down = ray<R, C, 2>(f, bottom, C(R(-1), R(-1)), h, target / 4, 0.0, t2);
    const C two_pi_i = C(R(0), R(2) * boost::math::constants::pi<R>());
    C jd = (mid[0] + up[0] - down[0]) / two_pi_i;
    C je = (mid[1] + up[1] - down[1]) / two_pi_i;
    C v = (jd + R(sign) * je) / R(2);
    KernelValue out;
    out.value = to_c(v);
    out.truncation_error = (t1 + t2) / two_pi;
    return out;
}

}  // namespace

double kernel_sigma0(const SpectralParams& p) {
    double m = -1e300;
    for (auto a : p.alpha) m = std::max(m, -a.real());
    return m + 0.75;
}

static void check_args(double x, int sign, const SpectralParams& p, int precision) {
    p.validate();
    if (!(x > 0)) throw DomainError("bessel_kernel: x must be positive");
    if (sign != 1 && sign != -1) throw DomainError("bessel_kernel: sign must be +1 or -1");
    if (precision < 1 || precision > 60) throw DomainError("bessel_kernel: precision must be in [1, 60]");
}

KernelValue bessel_kernel(double x, int sign, const SpectralParams& p, int precision,
                          double sigma_shift) {
    check_args(x, sign, p, precision);
    if (precision > 30) return kernel_impl<MpReal>(x, sign, p, 0, precision, sigma_shift);
    return kernel_impl<double>(x, sign, p, 0, precision, sigma_shift);
}

KernelValue bessel_kernel_derivative(double x, int sign, const SpectralParams& p, int j,
                                     int precision) {
    check_args(x, sign, p, precision);
    if (j < 0) throw DomainError("bessel_kernel_derivative: negative order");
    if (precision > 30) return kernel_impl<MpReal>(x, sign, p, j, precision, 0.0);
    return kernel_impl<double>(x, sign, p, j, precision, 0.0);
}

KernelSplit bessel_kernel_split(double x, int sign, const SpectralParams& p) {
    check_args(x, sign, p, 30);
    using C = cplx;
    const double pi = std::numbers::pi;
    const std::array<C, 3> alpha = p.alpha;
    const double logX = 3 * std::log(x);
    const C I(0, 1);
    // phase exponents i pi eps_j (s + a_j)/2 and coefficients prod_j c(delta_j, eps_j)
    struct Vec {
        std::array<int, 3> eps;
        double coef;
    };
    std::vector<Vec> osc, mixed;
    for (int m = 0; m < 8; ++m) {
        std::array<int, 3> eps{};
        int minus = 0;
        double coef = 1;
        for (int j = 0; j < 3; ++j) {
            eps[j] = (m >> j) & 1 ? -1 : 1;
            if (eps[j] < 0) {
                ++minus;
                if (p.delta[j]) coef = -coef;
            }
        }
        if ((minus % 2 == 0) != (sign == 1)) continue;
        (minus == 0 || minus == 3 ? osc : mixed).push_back({eps, coef});
    }
    auto make = [&](const std::vector<Vec>& vs) {
        return [&, vs](const C& s) {
            C base = -s * logX;
            for (int j = 0; j < 3; ++j) {
                C z = s + alpha[j];
                base += -z * std::log(two_pi) + log_gamma(z);
            }
            C sum = 0;
            for (const auto& v : vs) {
                C ph = 0;
                for (int j = 0; j < 3; ++j) ph += I * pi * static_cast<double>(v.eps[j]) * (s + alpha[j]) / 2.0;
                sum += v.coef * std::exp(base + ph);
            }
            return std::array<C, 1>{sum};
        };
    };
    KernelSplit out;
    const double sigma0 = kernel_sigma0(p);
    const double tb = std::max(40.0, 1.5 * two_pi * x);
    const double rate = logX + 3 * std::log(1 + tb / two_pi) + 6;
    const double h = std::min(2.0, 3 * two_pi / rate);
    const double target = 1e-15;
    {
        auto f = make(osc);
        C top(sigma0, tb), bottom(sigma0, -tb);
        double t1 = 0, t2 = 0;
        auto mid = segment<double, C, 1>(f, bottom, I, 0.0, 2 * tb, h, nullptr);
        auto up = ray<double, C, 1>(f, top, C(-1, 1), h, target / 4, 0.0, t1);
        auto down = ray<double, C, 1>(f, bottom, C(-1, -1), h, target / 4, 0.0, t2);
        out.oscillatory = (mid[0] + up[0] - down[0]) / (two_pi * I);
        out.truncation_error = (t1 + t2) / two_pi;
    }
    {
        // vertical line through the saddle point near 2 pi x exp(+-i pi/6)
        auto f = make(mixed);
        double sig = std::max(sigma0 + 0.5, std::sqrt(3.0) * pi * x);
        C c(sig, sign == 1 ? pi * x : -pi * x);
        double t1 = 0, t2 = 0;
        auto up = ray<double, C, 1>(f, c, I, 0.5, 0.0, 1e-17, t1);
        auto down = ray<double, C, 1>(f, c, -I, 0.5, 0.0, 1e-17, t2);
        out.exponential = (up[0] - down[0]) / (two_pi * I);
    }
    return out;
}

KernelValue KernelCache::get(double x, int sign, const SpectralParams& p, int precision) {
    Key k{x,
          sign,
          p.alpha[0].real(),
          p.alpha[0].imag(),
          p.alpha[1].real(),
          p.alpha[1].imag(),
          p.alpha[2].real(),
          p.alpha[2].imag(),
          p.delta[0],
          p.delta[1],
          p.delta[2],
          precision};
    {
        std::shared_lock lk(mu_);
        auto it = map_.find(k);
        if (it != map_.end()) return it->second;
    }
    KernelValue v = bessel_kernel(x, sign, p, precision);
    std::unique_lock lk(mu_);
    map_.emplace(k, v);
    return v;
}

std::size_t KernelCache::size() const {
    std::shared_lock lk(mu_);
    return map_.size();
}

}  // namespace gl3
