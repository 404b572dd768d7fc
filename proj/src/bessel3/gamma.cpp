#include <cmath>

#include "gl3/bessel3.hpp"
#include "gl3/errors.hpp"
#include "gl3/gamma.hpp"

namespace gl3 {

cplx log_gamma(cplx z) { return gl3::log_gamma<double>(z, 12.0, 12); }

cplx log_gamma_factor_single(cplx s, int delta) {
    // poles: s = 0, -2, -4, ... for delta = 0 and s = -1, -3, ... for delta = 1
    double k = std::round(s.real());
    if (k <= 0 && (static_cast<long long>(-k) % 2) == delta && std::abs(s - k) < 1e-8)
        throw DomainError("gamma_factor: s is within 1e-8 of a pole");
    const double pi = std::numbers::pi;
    cplx base = std::log(2.0) - s * std::log(two_pi) + log_gamma(s);
    cplx z = s * (pi / 2);
    return base + (delta == 0 ? log_cos<double>(z) : log_isin<double>(z));
}

cplx log_gamma_factor(cplx s, const SpectralParams& p) {
    cplx r = 0;
    for (int j = 0; j < 3; ++j) r += log_gamma_factor_single(s + p.alpha[j], p.delta[j]);
    return r;
}

cplx gamma_factor(cplx s, const SpectralParams& p) { return std::exp(log_gamma_factor(s, p)); }

}  // namespace gl3
