#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "gl3/spectral.hpp"

namespace gl3 {

// Source of normalized Fourier coefficients lambda(m, n).
class CoefficientProvider {
public:
    using LambdaFn = std::function<double(std::uint64_t, std::uint64_t)>;
    using TableFn = std::function<std::vector<double>(std::uint64_t)>;

    CoefficientProvider(std::string name, SpectralParams spectral, bool cuspidal, LambdaFn lambda,
                        TableFn table = {});

    const std::string& name() const { return name_; }
    const SpectralParams& spectral() const { return spectral_; }
    bool cuspidal() const { return cuspidal_; }
    double lambda(std::uint64_t m, std::uint64_t n) const { return scale_ * lambda_(m, n); }
    // lambda(1, n) for 0 <= n <= X (entry 0 unused)
    std::vector<double> table_1n(std::uint64_t X) const;
    // lambda(n, m) with the second argument fixed, for 0 <= n <= X
    std::vector<double> table_n_fixed(std::uint64_t m, std::uint64_t X) const;
    CoefficientProvider scaled(double factor) const;

private:
    std::string name_;
    SpectralParams spectral_;
    bool cuspidal_;
    LambdaFn lambda_;
    TableFn table_;
    double scale_ = 1.0;
};

// d_3 sieve: d3(n) for 0 <= n <= X
std::vector<std::uint32_t> d3_table(std::uint64_t X);

CoefficientProvider d3_provider();

}  // namespace gl3
