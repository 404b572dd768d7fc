#pragma once

#include <array>
#include <complex>

namespace gl3 {

// Archimedean parameters (alpha, delta) of a GL(3) form.
struct SpectralParams {
    std::array<std::complex<double>, 3> alpha{};
    std::array<int, 3> delta{};

    static SpectralParams trivial() { return {}; }
    SpectralParams conj() const {
        SpectralParams p = *this;
        for (auto& a : p.alpha) a = std::conj(a);
        return p;
    }
    // delta + (1,1,1) mod 2
    SpectralParams flipped() const {
        SpectralParams p = *this;
        for (auto& d : p.delta) d = 1 - d;
        return p;
    }
    void validate() const;
    bool operator==(const SpectralParams&) const = default;
};

}  // namespace gl3
