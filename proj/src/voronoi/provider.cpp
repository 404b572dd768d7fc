#include <utility>

#include "gl3/arith.hpp"
#include "gl3/errors.hpp"
#include "gl3/provider.hpp"

namespace gl3 {

void SpectralParams::validate() const {
    std::complex<double> s = alpha[0] + alpha[1] + alpha[2];
    if (std::abs(s) > 1e-12) throw DomainError("SpectralParams: alpha must sum to zero");
    for (int d : delta)
        if (d != 0 && d != 1) throw DomainError("SpectralParams: delta entries must be 0 or 1");
}

CoefficientProvider::CoefficientProvider(std::string name, SpectralParams spectral, bool cuspidal,
                                         LambdaFn lambda, TableFn table)
    : name_(std::move(name)),
      spectral_(spectral),
      cuspidal_(cuspidal),
      lambda_(std::move(lambda)),
      table_(std::move(table)) {}

std::vector<double> CoefficientProvider::table_1n(std::uint64_t X) const {
    std::vector<double> t;
    if (table_) {
        t = table_(X);
    } else {
        t.assign(X + 1, 0.0);
        for (std::uint64_t n = 1; n <= X; ++n) t[n] = lambda_(1, n);
    }
    if (scale_ != 1.0)
        for (auto& v : t) v *= scale_;
    return t;
}

std::vector<double> CoefficientProvider::table_n_fixed(std::uint64_t m, std::uint64_t X) const {
    if (m == 1) {
        // lambda(n, 1) = lambda(1, n) holds for the providers shipped here
        std::vector<double> t = table_1n(X);
        return t;
    }
    std::vector<double> t(X + 1, 0.0);
    for (std::uint64_t n = 1; n <= X; ++n) t[n] = lambda(n, m);
    return t;
}

CoefficientProvider CoefficientProvider::scaled(double factor) const {
    CoefficientProvider p = *this;
    p.scale_ *= factor;
    p.name_ = name_ + "*" + std::to_string(factor);
    return p;
}

std::vector<std::uint32_t> d3_table(std::uint64_t X) {
    std::vector<std::uint32_t> d2(X + 1, 0), d3(X + 1, 0);
    for (std::uint64_t i = 1; i <= X; ++i)
        for (std::uint64_t j = i; j <= X; j += i) ++d2[j];
    // d3 = 1 * d2 (Dirichlet convolution)
    for (std::uint64_t i = 1; i <= X; ++i)
        for (std::uint64_t j = i, k = 1; j <= X; j += i, ++k) d3[j] += d2[k];
    return d3;
}

namespace {

double d3_lambda(std::uint64_t m, std::uint64_t n) {
    if (m == 0 || n == 0) throw DomainError("d3_provider: arguments must be positive");
    double r = 1;
    auto fm = factorize(m).factors;
    auto fn = factorize(n).factors;
    std::size_t i = 0, j = 0;
    while (i < fm.size() || j < fn.size()) {
        int a = 0, b = 0;
        if (j >= fn.size() || (i < fm.size() && fm[i].first < fn[j].first)) {
            a = fm[i++].second;
        } else if (i >= fm.size() || fn[j].first < fm[i].first) {
            b = fn[j++].second;
        } else {
            a = fm[i++].second;
            b = fn[j++].second;
        }
        r *= (a + 1) * (b + 1) * (a + b + 2) / 2.0;
    }
    return r;
}

}  // namespace

CoefficientProvider d3_provider() {
    return CoefficientProvider("d3", SpectralParams::trivial(), false, d3_lambda,
                               [](std::uint64_t X) {
                                   auto t = d3_table(X);
                                   return std::vector<double>(t.begin(), t.end());
                               });
}

}  // namespace gl3
