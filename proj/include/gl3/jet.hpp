#pragma once

#include <vector>

#include "gl3/numeric.hpp"

namespace gl3 {

// Truncated Taylor expansion f(x0 + h) = sum_k c[k] h^k, k <= order.
class Jet {
public:
    Jet() = default;
    Jet(int order, cplx value);
    static Jet variable(int order, double x0);  // the identity x at x0

    int order() const { return static_cast<int>(c_.size()) - 1; }
    cplx operator[](int k) const { return c_[k]; }
    cplx& operator[](int k) { return c_[k]; }
    cplx value() const { return c_[0]; }
    // k-th derivative, k! * c[k]
    cplx derivative(int k) const;

    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator*=(cplx s);
    Jet& operator+=(cplx s);

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(Jet a, cplx s) { return a *= s; }
    friend Jet operator*(cplx s, Jet a) { return a *= s; }
    friend Jet operator+(Jet a, cplx s) { return a += s; }
    friend Jet operator-(Jet a) { return a *= -1.0; }
    friend Jet operator*(const Jet& a, const Jet& b);
    friend Jet operator/(const Jet& a, const Jet& b);

    friend Jet exp(const Jet& a);
    friend Jet log(const Jet& a);

private:
    std::vector<cplx> c_;
};

Jet reciprocal(const Jet& a);

}  // namespace gl3
