#include <Eigen/Dense>
#include <cmath>

#include "gl3/errors.hpp"
#include "gl3/voronoi.hpp"

namespace gl3 {

namespace {

constexpr double dilation_step = 0.2;

// M(j, i) = int base(y / lambda_i) (log y)^j dy = lambda_i int base(u) (log u + log lambda_i)^j du
Eigen::MatrixXd moment_matrix(const SmoothWeight& base, int k) {
    std::vector<double> mu(k);
    for (int j = 0; j < k; ++j) mu[j] = base.log_moment(j);
    Eigen::MatrixXd M(k, k + 1);
    for (int i = 0; i <= k; ++i) {
        double L = dilation_step * i, lambda = std::exp(L);
        for (int j = 0; j < k; ++j) {
            double s = 0, binom = 1;
            for (int q = 0; q <= j; ++q) {
                s += binom * mu[q] * std::pow(L, j - q);
                binom = binom * (j - q) / (q + 1);
            }
            M(j, i) = lambda * s;
        }
    }
    return M;
}

}  // namespace

double annihilation_condition(const SmoothWeight& base, int k) {
    if (k < 1 || k > 4) throw DomainError("annihilate_log_moments: k must be in [1, 4]");
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(moment_matrix(base, k));
    const auto& sv = svd.singularValues();
    return sv(0) / sv(sv.size() - 1);
}

SmoothWeight annihilate_log_moments(const SmoothWeight& base, int k) {
    if (k < 0 || k > 4) throw DomainError("annihilate_log_moments: k must be in [0, 4]");
    if (k == 0) return base;
    if (annihilation_condition(base, k) > 1e8)
        throw NumericalError("annihilate_log_moments: ill-conditioned moment system");
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(moment_matrix(base, k), Eigen::ComputeFullV);
    Eigen::VectorXd v = svd.matrixV().col(k);
    if (v(0) < 0) v = -v;
    std::vector<BumpComponent> parts;
    for (int i = 0; i <= k; ++i) {
        double lambda = std::exp(dilation_step * i);
        for (const auto& c : base.components()) parts.push_back({c.coef * v(i), c.lo * lambda, c.hi * lambda});
    }
    SmoothWeight raw = SmoothWeight::combination(parts, 0, base.derivative_order());
    double s = 1.0 / raw.sup();
    for (auto& p : parts) p.coef *= s;
    return SmoothWeight::combination(parts, k, base.derivative_order());
}

SmoothWeight voronoi_default_weight() {
    static const SmoothWeight w = annihilate_log_moments(SmoothWeight::bump(1, 8), 3);
    return w;
}

}  // namespace gl3
