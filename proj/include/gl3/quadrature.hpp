#pragma once

#include <functional>
#include <vector>

#include "gl3/numeric.hpp"

namespace gl3 {

// Gauss-Legendre rule on [-1, 1]
struct GaussRule {
    std::vector<double> x, w;
};
const GaussRule& gauss_legendre(int n);

// Composite rule: `panels` equal panels on [a, b], `order` nodes each.
struct NodeSet {
    std::vector<double> x, w;
};
NodeSet composite_nodes(double a, double b, int panels, int order);

struct QuadResult {
    cplx value;
    double error = 0.0;
    long evaluations = 0;
};

// Adaptive composite Gauss-Legendre. The panel error is estimated by
// comparing `order` and 2*`order` node rules; panels are bisected in a fixed
// order so the result is deterministic.
QuadResult adaptive_integrate(const std::function<cplx(double)>& f, double a, double b,
                              double abs_tol, int initial_panels, int order = 16,
                              long max_evaluations = 20'000'000);

}  // namespace gl3
