#include "gl3/jet.hpp"

#include <stdexcept>

namespace gl3 {

Jet::Jet(int order, cplx value) : c_(static_cast<std::size_t>(order) + 1, cplx(0)) {
    if (order < 0) throw std::invalid_argument("Jet: negative order");
    c_[0] = value;
}

Jet Jet::variable(int order, double x0) {
    Jet j(order, x0);
    if (order >= 1) j.c_[1] = 1.0;
    return j;
}

cplx Jet::derivative(int k) const {
    double f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return c_[k] * f;
}

Jet& Jet::operator+=(const Jet& o) {
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
}

Jet& Jet::operator*=(cplx s) {
    for (auto& v : c_) v *= s;
    return *this;
}

Jet& Jet::operator+=(cplx s) {
    c_[0] += s;
    return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
    const int n = a.order();
    Jet r(n, 0.0);
    for (int k = 0; k <= n; ++k) {
        cplx s = 0;
        for (int i = 0; i <= k; ++i) s += a.c_[i] * b.c_[k - i];
        r.c_[k] = s;
    }
    return r;
}

Jet reciprocal(const Jet& a) {
    const int n = a.order();
    if (a[0] == cplx(0)) throw std::domain_error("Jet: reciprocal of a jet with zero value");
    Jet r(n, 1.0 / a[0]);
    for (int k = 1; k <= n; ++k) {
        cplx s = 0;
        for (int i = 1; i <= k; ++i) s += a[i] * r[k - i];
        r[k] = -s / a[0];
    }
    return r;
}

Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

// b' = a' b  gives  k b_k = sum_{i=1}^k i a_i b_{k-i}
Jet exp(const Jet& a) {
    const int n = a.order();
    Jet r(n, std::exp(a.c_[0]));
    for (int k = 1; k <= n; ++k) {
        cplx s = 0;
        for (int i = 1; i <= k; ++i) s += static_cast<double>(i) * a.c_[i] * r.c_[k - i];
        r.c_[k] = s / static_cast<double>(k);
    }
    return r;
}

// b' = a'/a  gives  k a_0 b_k = k a_k - sum_{i=1}^{k-1} i b_i a_{k-i}
Jet log(const Jet& a) {
    const int n = a.order();
    if (a.c_[0] == cplx(0)) throw std::domain_error("Jet: log of a jet with zero value");
    Jet r(n, std::log(a.c_[0]));
    for (int k = 1; k <= n; ++k) {
        cplx s = static_cast<double>(k) * a.c_[k];
        for (int i = 1; i < k; ++i) s -= static_cast<double>(i) * r.c_[i] * a.c_[k - i];
        r.c_[k] = s / (static_cast<double>(k) * a.c_[0]);
    }
    return r;
}

}  // namespace gl3
