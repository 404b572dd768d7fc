#include "gl3/weight.hpp"

#include <cmath>
#include <string>

#include "gl3/errors.hpp"
#include "gl3/quadrature.hpp"

namespace gl3 {

namespace {

double bump_value(const BumpComponent& b, double x) {
    if (x <= b.lo || x >= b.hi) return 0.0;
    double u = (2 * x - b.lo - b.hi) / (b.hi - b.lo);
    double q = u * u / (1 - u * u);
    return q > 700 ? 0.0 : b.coef * std::exp(-q);
}

Jet bump_jet(const BumpComponent& b, double x, int order) {
    Jet zero(order, 0.0);
    if (x <= b.lo || x >= b.hi) return zero;
    double s = 2 / (b.hi - b.lo);
    double u0 = s * x - (b.lo + b.hi) / (b.hi - b.lo);
    if (u0 * u0 / (1 - u0 * u0) > 700) return zero;
    Jet u(order, u0);
    if (order >= 1) u[1] = s;
    Jet u2 = u * u;
    Jet q = u2 / (Jet(order, 1.0) - u2);
    return exp(-q) * b.coef;
}

}  // namespace

SmoothWeight::SmoothWeight() {
    static const SmoothWeight unit = bump(1.0, 2.0);
    *this = unit;
}

SmoothWeight SmoothWeight::bump(double lo, double hi, double height) {
    return combination({{height, lo, hi}});
}

SmoothWeight SmoothWeight::combination(std::vector<BumpComponent> parts, int annihilated,
                                       int derivative_order) {
    if (parts.empty()) throw DomainError("SmoothWeight: no components");
    SmoothWeight w(parts);
    w.lo_ = parts[0].lo;
    w.hi_ = parts[0].hi;
    for (const auto& p : parts) {
        if (!(p.lo > 0) || !(p.hi > p.lo))
            throw DomainError("SmoothWeight: component support must satisfy 0 < lo < hi");
        w.lo_ = std::min(w.lo_, p.lo);
        w.hi_ = std::max(w.hi_, p.hi);
    }
    w.certify(derivative_order);
    if (annihilated < 0) throw DomainError("SmoothWeight: negative moment count");
    for (int j = 0; j < annihilated; ++j) {
        double m = w.log_moment(j);
        if (std::abs(m) > 1e-10)
            throw DomainError("SmoothWeight: log moment " + std::to_string(j) + " is " +
                              std::to_string(m) + ", not annihilated");
    }
    w.annihilated_ = annihilated;
    return w;
}

double SmoothWeight::operator()(double x) const {
    double s = 0;
    for (const auto& p : parts_) s += bump_value(p, x);
    return s;
}

Jet SmoothWeight::jet(double x, int order) const {
    Jet s(order, 0.0);
    for (const auto& p : parts_) s += bump_jet(p, x, order);
    return s;
}

double SmoothWeight::derivative(double x, int k) const { return jet(x, k).derivative(k).real(); }

void SmoothWeight::certify(int derivative_order) {
    const int n = 10000;
    const double h = (hi_ - lo_) / n;
    bounds_.assign(static_cast<std::size_t>(derivative_order) + 1, 0.0);
    std::vector<std::vector<double>> d(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        Jet j = jet(lo_ + i * h, derivative_order + 1);
        d[i].resize(static_cast<std::size_t>(derivative_order) + 2);
        for (int k = 0; k <= derivative_order + 1; ++k) d[i][k] = j.derivative(k).real();
        for (int k = 0; k <= derivative_order; ++k)
            bounds_[k] = std::max(bounds_[k], std::abs(d[i][k]));
    }
    // central differences of V^{(k-1)} against V^{(k)}; the truncation error
    // is at most h^2/6 sup|V^{(k+2)}|, estimated from the jet at order k+1
    for (int k = 1; k <= derivative_order; ++k) {
        double scale = bounds_[k] + 1e-300;
        double next = 0;
        for (int i = 0; i <= n; ++i) next = std::max(next, std::abs(d[i][k + 1]));
        for (int i = 1; i < n; ++i) {
            double fd = (d[i + 1][k - 1] - d[i - 1][k - 1]) / (2 * h);
            double slack = h * next + 1e-9 * scale;
            if (std::abs(fd - d[i][k]) > slack)
                throw NumericalError("SmoothWeight: finite-difference check failed at order " +
                                     std::to_string(k));
        }
    }
    // grid maxima can miss the true sup by at most h * sup|V^{(k+1)}|
    for (int k = 0; k <= derivative_order; ++k) {
        double next = 0;
        for (int i = 0; i <= n; ++i) next = std::max(next, std::abs(d[i][k + 1]));
        bounds_[k] += 0.5 * h * next;
    }
    total_variation_ = 0;
    for (int i = 0; i < n; ++i)
        total_variation_ += 0.5 * h * (std::abs(d[i][1]) + std::abs(d[i + 1][1]));
}

double SmoothWeight::log_moment(int j, double shift) const {
    double total = 0;
    for (const auto& p : parts_) {
        double lmax = std::max(std::abs(std::log(p.lo)), std::abs(std::log(p.hi)));
        double ymax = std::max(std::pow(p.lo, shift), std::pow(p.hi, shift));
        double tol = 1e-15 * std::max(1.0, std::abs(p.coef) * (p.hi - p.lo) * std::pow(1 + lmax, j) * ymax);
        // integrate each component on its own support so panels align with the edges
        auto g = [&](double y) {
            double ly = std::log(y);
            return cplx(bump_value(p, y) * std::pow(ly, j) * std::exp(shift * ly), 0.0);
        };
        total += adaptive_integrate(g, p.lo, p.hi, tol, 8, 16).value.real();
    }
    return total;
}

SmoothWeight SmoothWeight::scaled(double factor) const {
    auto parts = parts_;
    for (auto& p : parts) p.coef *= factor;
    SmoothWeight w = combination(parts, 0, derivative_order());
    w.annihilated_ = annihilated_;
    return w;
}

}  // namespace gl3
