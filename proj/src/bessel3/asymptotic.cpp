#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "gl3/bessel3.hpp"
#include "gl3/errors.hpp"

namespace gl3 {

namespace {

// x J(+-x^3) e(-+3x)
cplx normalized_kernel(double x, int sign, const SpectralParams& p) {
    return bessel_kernel(x * x * x, sign, p).value * x * e(-3.0 * sign * x);
}

struct LsFit {
    std::vector<cplx> B;
    double residual = 0;
};

LsFit least_squares(const std::vector<double>& xs, const std::vector<cplx>& ys, int K, double x_ref) {
    const int n = static_cast<int>(xs.size());
    Eigen::MatrixXcd A(n, K);
    Eigen::VectorXcd b(n);
    for (int i = 0; i < n; ++i) {
        double v = x_ref / xs[i];
        for (int m = 0; m < K; ++m) A(i, m) = std::pow(v, m);
        b(i) = ys[i];
    }
    Eigen::VectorXcd c = A.colPivHouseholderQr().solve(b);
    LsFit f;
    for (int m = 0; m < K; ++m) f.B.push_back(c(m) * std::pow(x_ref, m));
    f.residual = (A * c - b).cwiseAbs().maxCoeff();
    return f;
}

cplx eval_series(const std::vector<cplx>& B, double x) {
    cplx s = 0;
    for (std::size_t m = B.size(); m-- > 0;) s = s / x + B[m];
    return s;
}

}  // namespace

AsymptoticExpansion AsymptoticExpansion::fit(const SpectralParams& p, int sign, int K, double x_lo,
                                             double x_hi) {
    p.validate();
    if (K < 1) throw DomainError("AsymptoticExpansion: K must be at least 1");
    if (sign != 1 && sign != -1) throw DomainError("AsymptoticExpansion: sign must be +1 or -1");
    if (!(x_lo >= 3.0) || !(x_hi > x_lo)) throw DomainError("AsymptoticExpansion: bad sample window");
    const int n = 4 * K;
    std::vector<double> xs(n);
    std::vector<cplx> ys(n);
    for (int i = 0; i < n; ++i) {
        xs[i] = x_lo + (x_hi - x_lo) * i / (n - 1);
        ys[i] = normalized_kernel(xs[i], sign, p);
    }
    LsFit f = least_squares(xs, ys, K, x_lo);
    LsFit g = least_squares(xs, ys, K + 1, x_lo);
    const double scale = std::abs(f.B[0]);
    const double remainder = 4 * std::abs(g.B[K]) * std::pow(x_lo, -K) + 1e-12 * scale;
    if (f.residual > remainder)
        throw CalibrationError("AsymptoticExpansion: fit residual exceeds the model remainder");

    AsymptoticExpansion out;
    out.B_ = f.B;
    out.sign_ = sign;
    out.residual_ = f.residual;
    for (int i = 0; i + 1 < n; ++i) {
        double x = 0.5 * (xs[i] + xs[i + 1]);
        cplx y = normalized_kernel(x, sign, p);
        out.cv_error_ = std::max(out.cv_error_, std::abs(eval_series(out.B_, x) - y) / std::abs(y));
    }
    return out;
}

cplx AsymptoticExpansion::operator()(double x) const {
    if (!(x >= x_min_)) throw DomainError("AsymptoticExpansion: x below x_min");
    return e(3.0 * sign_ * x) / x * eval_series(B_, x);
}

const AsymptoticExpansion& bessel_asymptotic_expansion(const SpectralParams& p, int sign, int K) {
    using Key = std::tuple<double, double, double, double, double, double, int, int, int, int, int>;
    static std::mutex mu;
    static std::map<Key, std::unique_ptr<AsymptoticExpansion>> cache;
    Key k{p.alpha[0].real(), p.alpha[0].imag(), p.alpha[1].real(), p.alpha[1].imag(),
          p.alpha[2].real(), p.alpha[2].imag(), p.delta[0],        p.delta[1],
          p.delta[2],        sign,              K};
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(k);
    if (it != cache.end()) return *it->second;
    auto fit = std::make_unique<AsymptoticExpansion>(AsymptoticExpansion::fit(p, sign, K));
    return *cache.emplace(k, std::move(fit)).first->second;
}

cplx bessel_asymptotic(double x, int sign, const SpectralParams& p, int K) {
    return bessel_asymptotic_expansion(p, sign, K)(x);
}

}  // namespace gl3
