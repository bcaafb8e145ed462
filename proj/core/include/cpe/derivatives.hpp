#pragma once

#include "cpe/tensor_spline.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace cpe {

/// First- and second-order derivative models of a spline, built once and shared by every
/// gradient/Hessian query. Requires degree >= 2 on every axis.
class DerivativeSet {
public:
    explicit DerivativeSet(const TensorSplineModel& model);

    std::size_t dim() const noexcept { return first_.size(); }
    const TensorSplineModel& first(std::size_t l) const { return first_.at(l); }
    /// d^2 F / du_l du_m; symmetric in (l, m).
    const TensorSplineModel& second(std::size_t l, std::size_t m) const;

private:
    std::vector<TensorSplineModel> first_;
    std::vector<TensorSplineModel> second_;  // packed upper triangle, row l holds m >= l
};

struct GradientHessian {
    Eigen::VectorXd gradient;
    Eigen::MatrixXd hessian;
};

/// Analytic gradient and Hessian at u. The Hessian is exactly symmetric.
GradientHessian gradient_and_hessian(const DerivativeSet& derivs, std::span<const double> u);

/// Gradient only (d evaluations).
Eigen::VectorXd gradient(const DerivativeSet& derivs, std::span<const double> u);

}  // namespace cpe
