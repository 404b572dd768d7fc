#pragma once

#include <utility>
#include <vector>

#include "gl3/jet.hpp"

namespace gl3 {

// coef * B((2x - lo - hi)/(hi - lo)) with B(u) = exp(-u^2/(1-u^2)) on (-1, 1),
// so that B(0) = 1.
struct BumpComponent {
    double coef = 1.0;
    double lo = 1.0;
    double hi = 2.0;
};

class SmoothWeight {
public:
    SmoothWeight();  // the unit bump on [1, 2]
    static SmoothWeight bump(double lo, double hi, double height = 1.0);
    // Checks that the first `annihilated` log moments vanish to 1e-10.
    static SmoothWeight combination(std::vector<BumpComponent> parts, int annihilated = 0,
                                    int derivative_order = 4);

    double operator()(double x) const;
    Jet jet(double x, int order) const;
    double derivative(double x, int k) const;

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    const std::vector<BumpComponent>& components() const { return parts_; }
    int derivative_order() const { return static_cast<int>(bounds_.size()) - 1; }
    // bounds()[j] >= sup |V^{(j)}| on a 10^4 point grid
    const std::vector<double>& bounds() const { return bounds_; }
    int annihilated_log_moments() const { return annihilated_; }
    double sup() const { return bounds_[0]; }
    double total_variation() const { return total_variation_; }

    // int V(y) (log y)^j y^shift dy
    double log_moment(int j, double shift = 0.0) const;
    double integral() const { return log_moment(0); }

    SmoothWeight scaled(double factor) const;

private:
    explicit SmoothWeight(std::vector<BumpComponent> parts) : parts_(std::move(parts)) {}
    void certify(int derivative_order);

    std::vector<BumpComponent> parts_;
    double lo_ = 1.0, hi_ = 2.0;
    std::vector<double> bounds_;
    int annihilated_ = 0;
    double total_variation_ = 0.0;
};

}  // namespace gl3
