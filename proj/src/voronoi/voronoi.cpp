#include <chrono>
#include <cstdio>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <tuple>

#include "gl3/arith.hpp"
#include "gl3/errors.hpp"
#include "gl3/expsums.hpp"
#include "gl3/voronoi.hpp"

namespace gl3 {

HankelInterpolant::HankelInterpolant(const SmoothWeight& w, const SpectralParams& p, double x_lo,
                                     double x_hi, double T, double panel_width, int nodes)
    : HankelInterpolant(HankelTransform(w, p, 0.5, T), x_lo, x_hi, panel_width, nodes) {}

HankelInterpolant::HankelInterpolant(const HankelTransform& H, double x_lo, double x_hi, double panel_width,
                                     int nodes)
    : H_(H), x_lo_(x_lo), x_hi_(x_hi), nodes_(nodes) {
    if (!(x_lo > 0) || !(x_hi > x_lo)) throw DomainError("HankelInterpolant: bad range");
    if (nodes < 4 || !(panel_width > 0)) throw DomainError("HankelInterpolant: bad panel layout");
    u_lo_ = std::cbrt(x_lo);
    const double u_hi = std::cbrt(x_hi);
    const std::size_t P = static_cast<std::size_t>(std::ceil((u_hi - u_lo_) / panel_width));
    h_ = (u_hi - u_lo_) / static_cast<double>(P);
    const double pi = std::numbers::pi;
    for (int j = 0; j < nodes; ++j) {
        cheb_.push_back(std::cos(pi * j / (nodes - 1)));
        double b = j % 2 ? -1.0 : 1.0;
        if (j == 0 || j == nodes - 1) b *= 0.5;
        bary_.push_back(b);
    }
    v0_.resize(P * nodes);
    v1_.resize(P * nodes);
    for (std::size_t q = 0; q < P; ++q)
        for (int j = 0; j < nodes; ++j) {
            double u = u_lo_ + h_ * (static_cast<double>(q) + 0.5 * (cheb_[j] + 1));
            auto [a0, a1] = H_.parts(u * u * u);
            v0_[q * nodes + j] = a0;
            v1_[q * nodes + j] = a1;
        }
    for (std::size_t q = 0; q < P; ++q) {
        double u = u_lo_ + h_ * (static_cast<double>(q) + 0.37);
        auto [a0, a1] = H_.parts(u * u * u);
        interp_error_ = std::max({interp_error_, std::abs(eval_panel(q, u, 0) - a0),
                                  std::abs(eval_panel(q, u, 1) - a1)});
    }
}

cplx HankelInterpolant::eval_panel(std::size_t panel, double u, int parity) const {
    const double t = 2 * (u - u_lo_ - h_ * static_cast<double>(panel)) / h_ - 1;
    const cplx* v = (parity == 0 ? v0_.data() : v1_.data()) + panel * nodes_;
    cplx num = 0;
    double den = 0;
    for (int j = 0; j < nodes_; ++j) {
        double d = t - cheb_[j];
        if (d == 0) return v[j];
        double c = bary_[j] / d;
        num += c * v[j];
        den += c;
    }
    return num / den;
}

cplx HankelInterpolant::W(double x, int sign) const {
    if (sign != 1 && sign != -1) throw DomainError("HankelInterpolant: sign must be +1 or -1");
    auto [wp, wm] = W_pair(x);
    return sign == 1 ? wp : wm;
}

std::pair<cplx, cplx> HankelInterpolant::W_pair(double x) const {
    cplx a0, a1;
    if (x < x_lo_ || x > x_hi_) {
        std::tie(a0, a1) = H_.parts(x);
    } else {
        double u = std::cbrt(x);
        std::size_t P = v0_.size() / nodes_;
        auto q = static_cast<std::size_t>(std::max(0.0, std::floor((u - u_lo_) / h_)));
        q = std::min(q, P - 1);
        a0 = eval_panel(q, u, 0);
        a1 = eval_panel(q, u, 1);
    }
    return {0.5 * (a0 - a1), 0.5 * (a0 + a1)};
}

namespace {

constexpr double sampling_safety = 1.25;
constexpr double model_safety = 10.0;

}  // namespace

TailEnvelope::TailEnvelope(const HankelTransform& H, double x0, double block, double step)
    : u0_(std::cbrt(x0)), block_(block) {
    if (!(x0 > 0) || !(block > 0) || !(step > 0)) throw DomainError("TailEnvelope: bad arguments");
    // |U computed - U| <= sqrt(x) times the Mellin mass left out
    const double lost = 2 * H.tail_mass() + 1e-15 * H.abs_mass();
    // block edges are aligned with u0 so that operator() can index them
    const double u_start = u0_ - block * std::floor(0.5 * u0_ / block), u_end = 2 * u0_;
    std::vector<double> mids, computed;
    for (int k = 0; u_start + k * block < u_end; ++k) {
        const double ub = u_start + k * block;
        double m = 0;
        for (double u = ub; u < ub + block; u += step) {
            double x = u * u * u;
            auto [a0, a1] = H.parts(x);
            m = std::max({m, x * std::abs(0.5 * (a0 - a1)), x * std::abs(0.5 * (a0 + a1))});
        }
        double ue = ub + block;
        double floor = std::pow(ue, 1.5) * lost;
        mids.push_back(ub + 0.5 * block);
        computed.push_back(m * sampling_safety);
        if (ub >= u0_ - 1e-9 * block) max_.push_back(m * sampling_safety + floor);
    }
    auto usable = [&](std::size_t j, bool beyond) {
        double floor = std::pow(mids[j] + 0.5 * block, 1.5) * lost;
        return computed[j] > 10 * floor && (!beyond || mids[j] >= u0_);
    };
    std::vector<double> X, Y;
    for (int pass = 0; pass < 2 && X.size() < 4; ++pass) {
        X.clear();
        Y.clear();
        for (std::size_t j = 0; j < mids.size(); ++j)
            if (usable(j, pass == 0)) {
                X.push_back(std::sqrt(mids[j]));
                Y.push_back(std::log(computed[j]));
            }
    }
    if (X.size() < 4) return;
    double mx = 0, my = 0;
    for (std::size_t j = 0; j < X.size(); ++j) {
        mx += X[j];
        my += Y[j];
    }
    mx /= static_cast<double>(X.size());
    my /= static_cast<double>(X.size());
    double sxy = 0, sxx = 0;
    for (std::size_t j = 0; j < X.size(); ++j) {
        sxy += (X[j] - mx) * (Y[j] - my);
        sxx += (X[j] - mx) * (X[j] - mx);
    }
    double slope = sxy / sxx;
    b_ = -slope;
    log_a_ = my - slope * mx;
    // shift the model above every block used in the fit
    double shift = 0;
    for (std::size_t j = 0; j < X.size(); ++j) shift = std::max(shift, Y[j] - (log_a_ - b_ * X[j]));
    log_a_ += shift + std::log(model_safety);
    valid_ = b_ > 0;
}

double TailEnvelope::operator()(double x) const {
    double u = std::cbrt(x);
    if (u < u0_) throw DomainError("TailEnvelope: x below x0");
    auto j = static_cast<std::size_t>((u - u0_) / block_);
    if (j < max_.size()) return max_[j];
    return model(u);
}

double TailEnvelope::model(double u) const { return std::exp(log_a_ - b_ * std::sqrt(u)); }

double jacquet_shalika_constant(const HankelTransform& H, double y_lo, double y_hi, int points) {
    if (!(y_lo > 0) || !(y_hi > y_lo) || points < 2) throw DomainError("jacquet_shalika_constant: bad grid");
    double C = 0;
    for (int i = 0; i < points; ++i) {
        double y = y_lo * std::pow(y_hi / y_lo, static_cast<double>(i) / (points - 1));
        auto [a0, a1] = H.parts(y);
        double u = y * std::max(std::abs(0.5 * (a0 - a1)), std::abs(0.5 * (a0 + a1)));
        C = std::max(C, u / std::sqrt(y));
    }
    return C;
}

cplx voronoi_lhs(const CoefficientProvider& provider, std::int64_t m, std::int64_t a, std::int64_t c,
                 const SmoothWeight& w, double N) {
    if (m < 1 || c < 1) throw DomainError("voronoi_lhs: m and c must be positive");
    if (std::gcd(a, c) != 1) throw DomainError("voronoi_lhs: gcd(a, c) must be 1");
    if (!(N > 0)) throw DomainError("voronoi_lhs: N must be positive");
    const auto n_lo = static_cast<std::uint64_t>(std::max(1.0, std::ceil(N * w.lo())));
    const auto n_hi = static_cast<std::uint64_t>(std::floor(N * w.hi()));
    if (n_hi > n_lo && n_hi - n_lo > 100'000'000)
        throw ResourceError("voronoi_lhs: more than 1e8 terms");
    std::vector<double> lam;
    if (m == 1) lam = provider.table_1n(n_hi);
    cplx s = 0;
    for (std::uint64_t n = n_lo; n <= n_hi; ++n) {
        double v = w(static_cast<double>(n) / N);
        if (v == 0) continue;
        double l = m == 1 ? lam[n] : provider.lambda(static_cast<std::uint64_t>(m), n);
        s += l * v * e_frac(-static_cast<std::int64_t>(n % static_cast<std::uint64_t>(c)) * a, c);
    }
    return s;
}

namespace {

// Partial summation with sum_{n <= t} d3(n) <= D(t) = t (log t + 2)^2 / 2.
double dhat(double t) {
    double l = std::log(t) + 2;
    return t * l * l / 2;
}

struct DualPlan {
    std::vector<std::int64_t> mp;    // m' | mc
    std::vector<double> kappa;       // N m'^2 / (m c^3)
    std::vector<std::int64_t> q;     // mc / m'
    std::vector<std::int64_t> abar_m;
};

// Monotone hull of the envelope: max of env over [x, infinity).
class EnvelopeHull {
public:
    explicit EnvelopeHull(const TailEnvelope& env) : env_(env) {
        const auto& m = env.block_maxima();
        hull_.resize(m.size());
        double run = env.model(env.u_model());
        for (std::size_t j = m.size(); j-- > 0;) {
            run = std::max(run, m[j]);
            hull_[j] = run;
        }
    }
    double operator()(double x) const {
        double u = std::cbrt(x);
        if (u >= env_.u_model()) return env_.model(u);
        auto j = static_cast<std::size_t>(std::max(0.0, (u - env_.u0()) / env_.block()));
        return hull_[std::min(j, hull_.size() - 1)];
    }

private:
    const TailEnvelope& env_;
    std::vector<double> hull_;
};

// sum_{n > A} d3(n) h(n) <= int_A^infty D(t) d(-h)(t) for h(t) = hull(kappa t) / t
double d3_weighted_tail(const EnvelopeHull& hull, double kappa, double A) {
    A = std::max(A, 1.0);
    const double dv = 0.002;
    double s = 0;
    double t0 = A, h0 = hull(kappa * t0) / t0;
    for (int k = 1; k < 200000; ++k) {
        double t1 = A * std::exp(k * dv);
        double h1 = hull(kappa * t1) / t1;
        s += dhat(t1) * (h0 - h1);
        if (dhat(t1) * h1 < 1e-14 * s) break;
        t0 = t1;
        h0 = h1;
    }
    return s;
}

double certified_tail(const DualPlan& plan, const TailEnvelope& env, double x_cut, std::int64_t c) {
    EnvelopeHull hull(env);
    double tot = 0;
    for (std::size_t i = 0; i < plan.mp.size(); ++i) {
        const double k = plan.kappa[i];
        const std::int64_t q = plan.q[i];
        double d3m = static_cast<double>(d3_table(static_cast<std::uint64_t>(plan.mp[i]))[plan.mp[i]]);
        double g = static_cast<double>(std::gcd(plan.abar_m[i], q));
        double weil = static_cast<double>(tau(static_cast<std::uint64_t>(q))) * std::sqrt(static_cast<double>(q) * g);
        double kl = std::min(static_cast<double>(euler_phi(static_cast<std::uint64_t>(q))), weil);
        tot += 2 * d3m / static_cast<double>(plan.mp[i]) * kl * d3_weighted_tail(hull, k, std::floor(x_cut / k));
    }
    return tot * static_cast<double>(c);
}

// transform, tail envelope and interpolant depend only on the weight and the spectral parameters
struct DualKernel {
    HankelTransform H;
    TailEnvelope env;
    std::mutex mu;
    std::shared_ptr<const HankelInterpolant> U;

    DualKernel(const SmoothWeight& w, const SpectralParams& sp)
        : H(w, sp, 0.5, 3000.0), env(fit_envelope(H)) {}

    // the envelope is fitted as far out as the computed transform stays above its error floor
    static TailEnvelope fit_envelope(const HankelTransform& H) {
        std::optional<TailEnvelope> env;
        for (double x0 = 1e4; x0 < 1e9; x0 *= 4) {
            TailEnvelope e(H, x0);
            if (!e.valid()) break;
            env = std::move(e);
        }
        if (!env) throw ResourceError("voronoi_rhs: no usable envelope for the dual-sum tail");
        return *env;
    }

    std::shared_ptr<const HankelInterpolant> interpolant(double x_hi) {
        std::lock_guard<std::mutex> lock(mu);
        if (!U || U->x_hi() < x_hi) U = std::make_shared<const HankelInterpolant>(H, 1.0, 1.5 * x_hi);
        return U;
    }
};

std::string kernel_key(const SmoothWeight& w, const SpectralParams& sp) {
    std::string key;
    char buf[128];
    for (const auto& c : w.components()) {
        std::snprintf(buf, sizeof buf, "%a,%a,%a;", c.coef, c.lo, c.hi);
        key += buf;
    }
    for (int j = 0; j < 3; ++j) {
        std::snprintf(buf, sizeof buf, "%a,%a,%d;", sp.alpha[j].real(), sp.alpha[j].imag(), sp.delta[j]);
        key += buf;
    }
    return key;
}

std::shared_ptr<DualKernel> dual_kernel(const SmoothWeight& w, const SpectralParams& sp) {
    static std::mutex mu;
    static std::map<std::string, std::shared_ptr<DualKernel>> cache;
    const std::string key = kernel_key(w, sp);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto k = std::make_shared<DualKernel>(w, sp);
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(key, k).first->second;
}

}  // namespace

DualSum voronoi_rhs_detail(const CoefficientProvider& provider, std::int64_t m, std::int64_t a,
                           std::int64_t c, const SmoothWeight& w, double N, double tolerance,
                           DualNormalization norm) {
    if (m < 1 || c < 1) throw DomainError("voronoi_rhs: m and c must be positive");
    if (std::gcd(a, c) != 1) throw DomainError("voronoi_rhs: gcd(a, c) must be 1");
    if (!(N > 0) || !(tolerance > 0)) throw DomainError("voronoi_rhs: N and tolerance must be positive");
    if (!provider.cuspidal() && w.annihilated_log_moments() < 3)
        throw PreconditionError(
            "voronoi_rhs: non-cuspidal provider requires a weight with annihilated_log_moments >= 3");
    const SpectralParams& sp = provider.spectral();
    const std::int64_t mc = m * c;
    const std::int64_t abar = c == 1 ? 0 : static_cast<std::int64_t>(mod_inverse(mod(a, c), c).value);
    const double c3 = static_cast<double>(c) * c * c;

    DualPlan plan;
    for (auto d : factorize(static_cast<std::uint64_t>(mc)).divisors()) {
        auto mp = static_cast<std::int64_t>(d);
        plan.mp.push_back(mp);
        plan.kappa.push_back(N * static_cast<double>(mp) * static_cast<double>(mp) / (static_cast<double>(m) * c3));
        plan.q.push_back(mc / mp);
        plan.abar_m.push_back(mod(abar * m, mc / mp));
    }

    std::shared_ptr<DualKernel> K = dual_kernel(w, sp);
    const TailEnvelope& env = K->env;
    const double x_env = std::pow(env.u0(), 3);

    auto partial = [&](double x_cut, DualSum& out) {
        std::shared_ptr<const HankelInterpolant> U = K->interpolant(x_cut);
        cplx total = 0;
        std::uint64_t terms = 0;
        for (std::size_t i = 0; i < plan.mp.size(); ++i) {
            const auto n_max = static_cast<std::uint64_t>(std::floor(x_cut / plan.kappa[i]));
            if (n_max == 0) continue;
            const std::vector<double> lam = provider.table_n_fixed(static_cast<std::uint64_t>(plan.mp[i]), n_max);
            const std::int64_t q = plan.q[i];
            const std::vector<cplx> row = kloosterman_row(plan.abar_m[i], q);
            cplx part = 0;
            for (std::uint64_t n = 1; n <= n_max; ++n) {
                if (lam[n] == 0) continue;
                const auto r = static_cast<std::int64_t>(n % static_cast<std::uint64_t>(q));
                double x = plan.kappa[i] * static_cast<double>(n);
                double scale = x;
                if (norm == DualNormalization::usual_form) {
                    double y = x / N;
                    x = N * y;
                    scale = y * N;
                }
                auto [wp, wm] = U->W_pair(x);
                part += lam[n] / static_cast<double>(n) * scale * (row[r] * wp + row[(q - r) % q] * wm);
                ++terms;
            }
            total += part / static_cast<double>(plan.mp[i]);
        }
        out.value = total * static_cast<double>(c);
        out.x_cut = x_cut;
        out.terms = terms;
        out.interpolation_error = U->interpolation_error();
        out.y_cut = static_cast<std::uint64_t>(std::floor(x_cut * static_cast<double>(m) * c3 / N));
    };

    DualSum out;
    partial(x_env, out);
    double x_cut = x_env;
    for (;;) {
        // smallest cut whose bound meets the target for the current estimate of the sum
        double target = 0.5 * tolerance * std::abs(out.value);
        double cand = x_cut;
        while (cand < 1e9 && certified_tail(plan, env, cand, c) > target) cand *= 1.25;
        if (cand >= 1e9)
            throw ResourceError("voronoi_rhs: dual-sum tail could not be certified", out.value,
                                certified_tail(plan, env, x_cut, c));
        if (cand > x_cut) {
            x_cut = cand;
            partial(x_cut, out);
        }
        out.tail_bound = certified_tail(plan, env, x_cut, c);
        if (out.tail_bound <= tolerance * std::max(std::abs(out.value), 1e-30)) return out;
    }
}

cplx voronoi_rhs(const CoefficientProvider& provider, std::int64_t m, std::int64_t a, std::int64_t c,
                 const SmoothWeight& w, double N, double tolerance) {
    return voronoi_rhs_detail(provider, m, a, c, w, N, tolerance).value;
}

double voronoi_rel_error(cplx lhs, cplx rhs) {
    return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-30});
}

std::vector<VoronoiReport> verify_voronoi(const CoefficientProvider& provider,
                                          const std::vector<VoronoiPoint>& grid, const SmoothWeight& w,
                                          double tolerance, int threads) {
    if (!provider.cuspidal() && w.annihilated_log_moments() < 3)
        throw PreconditionError(
            "verify_voronoi: non-cuspidal provider requires a weight with annihilated_log_moments >= 3");
    std::vector<VoronoiReport> out(grid.size());
    parallel_items(grid.size(), threads, [&](std::size_t i) {
        VoronoiReport& r = out[i];
        r.point = grid[i];
        r.polar_handling = provider.cuspidal() ? PolarHandling::cuspidal : PolarHandling::annihilated_moments;
        if (grid[i].c == 1) {
            r.skipped = true;
            r.polar_handling = PolarHandling::skipped;
            return;
        }
        auto tic = std::chrono::steady_clock::now();
        try {
            r.lhs = voronoi_lhs(provider, grid[i].m, grid[i].a, grid[i].c, w, grid[i].N);
            DualSum d = voronoi_rhs_detail(provider, grid[i].m, grid[i].a, grid[i].c, w, grid[i].N, tolerance);
            r.rhs = d.value;
            r.x_cut = d.x_cut;
            r.y_cut = d.y_cut;
            r.tail_bound = d.tail_bound;
            r.rel_error = voronoi_rel_error(r.lhs, r.rhs);
        } catch (const std::exception& ex) {
            r.error = ex.what();
            r.rel_error = std::numeric_limits<double>::infinity();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - tic).count();
    });
    return out;
}

}  // namespace gl3
