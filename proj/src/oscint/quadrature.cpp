#include "gl3/quadrature.hpp"
#include "gl3/errors.hpp"

#include <map>
#include <mutex>

namespace gl3 {

std::vector<cplx> unit_roots(std::int64_t m) {
    std::vector<cplx> t(static_cast<std::size_t>(m));
    for (std::int64_t k = 0; k < m; ++k) t[k] = e_frac(k, m);
    return t;
}

int default_threads() {
    unsigned h = std::thread::hardware_concurrency();
    return h ? static_cast<int>(h) : 1;
}

namespace {

GaussRule compute_rule(int n) {
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1, p1 = x;
            dp = n * (x * p1 - p0) / (x * x - 1);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1, p1 = x;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1);
        r.x[i] = x;
        r.w[i] = 2.0 / ((1 - x * x) * dp * dp);
    }
    return r;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
    return it->second;
}

NodeSet composite_nodes(double a, double b, int panels, int order) {
    const GaussRule& g = gauss_legendre(order);
    NodeSet s;
    s.x.reserve(static_cast<std::size_t>(panels) * order);
    s.w.reserve(static_cast<std::size_t>(panels) * order);
    double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        double c = a + (p + 0.5) * h;
        for (int i = 0; i < order; ++i) {
            s.x.push_back(c + 0.5 * h * g.x[i]);
            s.w.push_back(0.5 * h * g.w[i]);
        }
    }
    return s;
}

QuadResult adaptive_integrate(const std::function<cplx(double)>& f, double a, double b,
                              double abs_tol, int initial_panels, int order,
                              long max_evaluations) {
    const GaussRule& lo = gauss_legendre(order);
    const GaussRule& hi = gauss_legendre(2 * order);
    QuadResult res;
    auto rule = [&](const GaussRule& g, double p, double q) {
        cplx s = 0;
        double c = 0.5 * (p + q), h = 0.5 * (q - p);
        for (std::size_t i = 0; i < g.x.size(); ++i) s += g.w[i] * f(c + h * g.x[i]);
        res.evaluations += static_cast<long>(g.x.size());
        return s * h;
    };
    struct Panel {
        double p, q;
    };
    std::vector<Panel> stack;
    double h = (b - a) / initial_panels;
    for (int i = initial_panels - 1; i >= 0; --i) stack.push_back({a + i * h, a + (i + 1) * h});
    const double len = b - a;
    while (!stack.empty()) {
        Panel pn = stack.back();
        stack.pop_back();
        cplx i1 = rule(lo, pn.p, pn.q);
        cplx i2 = rule(hi, pn.p, pn.q);
        double err = std::abs(i2 - i1);
        double allowed = abs_tol * (pn.q - pn.p) / len;
        if (err <= allowed || (pn.q - pn.p) < 1e-12 * len) {
            res.value += i2;
            res.error += err;
            continue;
        }
        if (res.evaluations > max_evaluations) {
            res.value += i2;
            res.error += err;
            for (auto& r : stack) {
                cplx v = rule(hi, r.p, r.q);
                res.value += v;
                res.error += std::abs(v);
            }
            throw ResourceError("adaptive_integrate: evaluation budget exhausted", res.value,
                                res.error);
        }
        double m = 0.5 * (pn.p + pn.q);
        stack.push_back({m, pn.q});
        stack.push_back({pn.p, m});
    }
    return res;
}

}  // namespace gl3
