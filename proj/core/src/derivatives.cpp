#include "cpe/derivatives.hpp"

#include <stdexcept>

namespace cpe {

namespace {
std::size_t packed(std::size_t l, std::size_t m, std::size_t d) {
    if (l > m) std::swap(l, m);
    return l * d - l * (l - 1) / 2 + (m - l);
}
}  // namespace

DerivativeSet::DerivativeSet(const TensorSplineModel& model) {
    const std::size_t d = model.dim();
    for (std::size_t l = 0; l < d; ++l) {
        if (model.axis(l).degree() < 2) {
            throw std::invalid_argument("Hessian requires degree >= 2 on every axis");
        }
    }
    first_.reserve(d);
    for (std::size_t l = 0; l < d; ++l) first_.push_back(model.derivative(l));
    second_.reserve(d * (d + 1) / 2);
    for (std::size_t l = 0; l < d; ++l) {
        for (std::size_t m = l; m < d; ++m) second_.push_back(first_[l].derivative(m));
    }
}

const TensorSplineModel& DerivativeSet::second(std::size_t l, std::size_t m) const {
    return second_.at(packed(l, m, dim()));
}

GradientHessian gradient_and_hessian(const DerivativeSet& derivs, std::span<const double> u) {
    const std::size_t d = derivs.dim();
    GradientHessian gh{Eigen::VectorXd(d), Eigen::MatrixXd(d, d)};
    for (std::size_t l = 0; l < d; ++l) {
        gh.gradient[static_cast<Eigen::Index>(l)] = derivs.first(l).evaluate(u);
        for (std::size_t m = l; m < d; ++m) {
            const double v = derivs.second(l, m).evaluate(u);
            gh.hessian(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(m)) = v;
            gh.hessian(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(l)) = v;
        }
    }
    return gh;
}

Eigen::VectorXd gradient(const DerivativeSet& derivs, std::span<const double> u) {
    Eigen::VectorXd g(derivs.dim());
    for (std::size_t l = 0; l < derivs.dim(); ++l) {
        g[static_cast<Eigen::Index>(l)] = derivs.first(l).evaluate(u);
    }
    return g;
}

}  // namespace cpe
