#include "gl3/oscint.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "gl3/errors.hpp"

namespace gl3 {

namespace {

constexpr double pi = std::numbers::pi;

double sgn(double v) { return v < 0 ? -1.0 : 1.0; }

}  // namespace

void OscillatorySpec::validate() const {
    if (std::abs(t) > 1e5) throw DomainError("oscillatory spec: |t| exceeds 1e5");
    if (t == 0 && r != 0) throw DomainError("oscillatory spec: t = 0 requires r = 0");
    if (!(N > 0)) throw DomainError("oscillatory spec: N must be positive");
    if (M < 1 || p < 1 || l < 1) throw DomainError("oscillatory spec: M, p, l must be positive");
}

double OscillatorySpec::linear_coefficient() const {
    if (r == 0) return 0.0;
    return static_cast<double>(r) * N * static_cast<double>(p) /
           (static_cast<double>(M) * static_cast<double>(M) * static_cast<double>(l) * t);
}

double OscillatorySpec::phase(double x) const {
    return -t * std::log(x) / two_pi - (n / N) * t / x - linear_coefficient() * x;
}

double OscillatorySpec::phase_d1(double x) const {
    return -t / (two_pi * x) + (n / N) * t / (x * x) - linear_coefficient();
}

double OscillatorySpec::phase_d2(double x) const {
    return t / (two_pi * x * x) - 2 * (n / N) * t / (x * x * x);
}

Jet OscillatorySpec::phase_jet(double x, int order) const {
    Jet X = Jet::variable(order, x);
    return log(X) * (-t / two_pi) + reciprocal(X) * (-(n / N) * t) + X * (-linear_coefficient());
}

QuadResult integrate_oscillatory(const OscillatorySpec& spec, double abs_tol,
                                 long max_evaluations) {
    spec.validate();
    const double a = spec.weight.lo(), b = spec.weight.hi();
    const int samples = 512;
    double cycles = 0;
    for (int i = 0; i < samples; ++i)
        cycles += std::abs(spec.phase_d1(a + (i + 0.5) * (b - a) / samples)) * (b - a) / samples;
    const int order = 16;
    int panels = static_cast<int>(std::ceil(10.0 * cycles / order)) + 4;
    auto f = [&](double x) { return spec.weight(x) * e(spec.phase(x)); };
    return adaptive_integrate(f, a, b, abs_tol, panels, order, max_evaluations);
}

StationaryPointReport stationary_phase_main_term(const OscillatorySpec& spec) {
    spec.validate();
    if (spec.t == 0) throw PreconditionError("stationary phase: t = 0 has no oscillation");
    const double Y = spec.n / spec.N, k = spec.linear_coefficient();
    const double a = spec.weight.lo(), b = spec.weight.hi();
    StationaryPointReport rep;
    double x0, x1 = -1;
    if (k == 0) {
        x0 = two_pi * Y;
    } else {
        double A = 16 * pi * pi * k * Y / spec.t;
        if (1 + A < 0)
            throw PreconditionError(
                "stationary phase: no real stationary point; use the first derivative test");
        double s = std::sqrt(1 + A);
        x0 = 4 * pi * Y / (1 + s);
        x1 = (-1 - s) * spec.t / (4 * pi * k);
    }
    rep.other_branch = x1 > a && x1 < b;
    if (!(x0 > a && x0 < b))
        throw PreconditionError("stationary phase: x0 = " + std::to_string(x0) +
                                " lies outside the weight support; the integral is bounded by "
                                "the first derivative test");
    for (int it = 0; it < 3; ++it) {
        double d2 = spec.phase_d2(x0);
        if (d2 == 0) break;
        x0 -= spec.phase_d1(x0) / d2;
    }
    if (std::abs(spec.phase_d1(x0)) > 1e-10 * std::abs(spec.t) / x0)
        throw NumericalError("stationary phase: residual of f'(x0) too large");

    Jet F = spec.phase_jet(x0, 4) * two_pi;
    Jet g = spec.weight.jet(x0, 2);
    double F2 = F.derivative(2).real(), F3 = F.derivative(3).real(), F4 = F.derivative(4).real();
    double g0 = g.derivative(0).real(), g1 = g.derivative(1).real(), g2 = g.derivative(2).real();
    rep.x0 = x0;
    rep.f_second_at_x0 = spec.phase_d2(x0);
    double f2 = rep.f_second_at_x0;
    rep.leading_term = g0 * e(spec.phase(x0)) * e(sgn(f2) / 8) / std::sqrt(std::abs(f2));
    double aF2 = std::abs(F2);
    rep.error_estimate = std::sqrt(two_pi / aF2) *
                         (std::abs(g2) / (2 * aF2) + std::abs(g1 * F3) / (2 * F2 * F2) +
                          std::abs(g0 * F4) / (8 * F2 * F2) +
                          5 * std::abs(g0) * F3 * F3 / (24 * aF2 * aF2 * aF2));
    return rep;
}

double derivative_test_bound(const OscillatorySpec& spec, int order) {
    spec.validate();
    if (order != 1 && order != 2) throw DomainError("derivative_test_bound: order must be 1 or 2");
    const double a = spec.weight.lo(), b = spec.weight.hi();
    const int n = 4096;
    double mn = std::numeric_limits<double>::infinity();
    double first = 0;
    for (int i = 0; i <= n; ++i) {
        double x = a + (b - a) * i / n;
        double d = order == 1 ? spec.phase_d1(x) : spec.phase_d2(x);
        if (i == 0) first = d;
        if (d == 0 || sgn(d) != sgn(first))
            throw PreconditionError("derivative_test_bound: derivative of order " +
                                    std::to_string(order) + " changes sign on the support");
        mn = std::min(mn, std::abs(d));
    }
    const double tv = spec.weight.total_variation();
    if (order == 1) return std::max(1.0, tv / pi) / mn;
    return 4 * std::max(1.0, tv * 2 / std::sqrt(two_pi)) / std::sqrt(mn);
}

namespace {

// ||g^{(k)}||_1 for k = 0..K, g(x) = x^{-it} e(-y t/x) V(x)
std::vector<double> derivative_norms(double t, double y, const SmoothWeight& V, int K) {
    const double a = V.lo(), b = V.hi();
    double cycles = 0;
    for (int i = 0; i < 256; ++i) {
        double x = a + (i + 0.5) * (b - a) / 256;
        cycles += std::abs(-t / (two_pi * x) + y * t / (x * x)) * (b - a) / 256;
    }
    int panels = std::max(256, static_cast<int>(std::ceil(2 * cycles)));
    NodeSet ns = composite_nodes(a, b, panels, 8);
    std::vector<double> G(static_cast<std::size_t>(K) + 1, 0.0);
    const cplx I(0, 1);
    for (std::size_t i = 0; i < ns.x.size(); ++i) {
        double x = ns.x[i];
        Jet X = Jet::variable(K, x);
        Jet ph = log(X) * (-I * t) + reciprocal(X) * (-I * two_pi * y * t);
        Jet g = exp(ph) * V.jet(x, K);
        double fact = 1;
        for (int k = 0; k <= K; ++k) {
            if (k > 0) fact *= k;
            G[k] += ns.w[i] * std::abs(g[k]) * fact;
        }
    }
    return G;
}

}  // namespace

double fourier_decay_bound(double t, double y, const SmoothWeight& V, double xi, int max_order) {
    auto G = derivative_norms(t, y, V, max_order);
    double best = G[0];
    for (int k = 1; k <= max_order; ++k)
        best = std::min(best, G[k] / std::pow(two_pi * std::abs(xi), k));
    return best;
}

TruncationReport truncation_cutoff(std::int64_t M, double t, double N, double P, double L,
                                   const SmoothWeight& V, double threshold, double y_lo,
                                   double y_hi, int max_order) {
    if (M < 1 || !(N > 0) || !(P > 0) || !(L > 0) || t == 0)
        throw DomainError("truncation_cutoff: parameters must be positive");
    if (!(threshold > 0)) throw DomainError("truncation_cutoff: threshold must be positive");
    const double at = std::abs(t);
    const double M2 = static_cast<double>(M) * static_cast<double>(M);
    std::vector<double> G(static_cast<std::size_t>(max_order) + 1, 0.0);
    const int ny = 9;
    for (int j = 0; j < ny; ++j) {
        double y = y_lo + (y_hi - y_lo) * j / (ny - 1);
        auto g = derivative_norms(at, y, V, max_order);
        for (int k = 0; k <= max_order; ++k) G[k] = std::max(G[k], g[k]);
    }
    TruncationReport rep;
    rep.scale = M2 * at * at * L / (N * P);
    rep.xi_star = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= max_order; ++k) {
        double xi = std::pow(G[k] / threshold, 1.0 / k) / two_pi;
        if (xi < rep.xi_star) {
            rep.xi_star = xi;
            rep.order = k;
        }
    }
    // smallest frequency at |r| = 1 over p in [P, 2P], l in [L, 2L]
    const double xi1 = N * P / (M2 * 2 * L * at);
    double R = std::ceil(rep.xi_star / xi1 * (1 + 1e-12)) - 1;
    rep.R_max = static_cast<std::int64_t>(std::max(0.0, R));
    return rep;
}

}  // namespace gl3
