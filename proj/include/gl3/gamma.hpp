#pragma once

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/constants/constants.hpp>
#include <vector>

namespace gl3 {

template <class R, class C>
C log_isin(const C& z);

// log Gamma(z) on some branch; only exp(log_gamma(z)) is meaningful.
// Reflects into Re z >= 1/2, shifts until |z| >= r0, then applies Stirling
// with `terms` Bernoulli corrections.
template <class R, class C>
C log_gamma(C z, R r0, int terms) {
    using std::abs;
    using std::log;
    const R pi = boost::math::constants::pi<R>();
    if (real(z) < R(0.5)) {
        // Gamma(z) Gamma(1 - z) = pi/sin(pi z), and log sin = log(i sin) - i pi/2
        C ls = log_isin<R>(z * pi) - C(R(0), pi / R(2));
        return C(log(pi)) - ls - log_gamma<R>(C(R(1)) - z, r0, terms);
    }
    C acc(0);
    while (abs(z) < r0) {
        acc -= log(z);
        z += R(1);
    }
    const R half_log_2pi = log(boost::math::constants::two_pi<R>()) / 2;
    C res = (z - R(0.5)) * log(z) - z + C(half_log_2pi);
    C inv = C(R(1)) / z, inv2 = inv * inv, p = inv;
    static const std::vector<R> coef = [] {
        std::vector<R> c(61);
        for (int k = 1; k <= 60; ++k)
            c[k] = boost::math::bernoulli_b2n<R>(k) / R((2 * k) * (2 * k - 1));
        return c;
    }();
    for (int k = 1; k <= terms && k <= 60; ++k) {
        res += p * coef[k];
        p *= inv2;
    }
    return res + acc;
}

// log cos z and log(i sin z), stable for large |Im z|
template <class R, class C>
C log_cos(const C& z) {
    const C I(R(0), R(1));
    const R ln2 = boost::math::constants::ln_two<R>();
    if (imag(z) > 0) return -I * z + log(C(R(1)) + exp(R(2) * I * z)) - C(ln2);
    return I * z + log(C(R(1)) + exp(R(-2) * I * z)) - C(ln2);
}

template <class R, class C>
C log_isin(const C& z) {
    const C I(R(0), R(1));
    const R ln2 = boost::math::constants::ln_two<R>();
    if (imag(z) > 0) return -I * z + log(exp(R(2) * I * z) - C(R(1))) - C(ln2);
    return I * z + log(C(R(1)) - exp(R(-2) * I * z)) - C(ln2);
}

}  // namespace gl3
