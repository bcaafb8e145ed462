#pragma once

#include "cpe/knot_vector.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace cpe {

/// Physical extent of one axis; parameter u in [0,1] maps linearly onto [min, max].
struct AxisExtent {
    double min = 0.0;
    double max = 1.0;

    double width() const noexcept { return max - min; }
    double to_param(double x) const noexcept { return (x - min) / (max - min); }
    double to_physical(double u) const noexcept { return min + u * (max - min); }

    bool operator==(const AxisExtent&) const = default;
};

/// A d-dimensional box [t_j, t_{j+1}] per axis and the control window it depends on.
struct KnotSpan {
    std::vector<std::size_t> knot_index;     // j per axis
    std::vector<std::size_t> first_control;  // j - p per axis; window is first .. first + p
    std::vector<double> lo;
    std::vector<double> hi;

    std::size_t dim() const noexcept { return lo.size(); }
    std::vector<double> center() const;
    double diagonal() const;
};

/// Tensor-product B-spline F: [0,1]^d -> R.
///
/// Controls are stored row-major with the last axis fastest. The model is immutable after
/// construction; all query methods are safe to call concurrently.
class TensorSplineModel {
public:
    TensorSplineModel() = default;

    /// Throws std::invalid_argument when the control count disagrees with the knot vectors
    /// or when extents are given for the wrong number of axes. Empty extents default to [0,1].
    TensorSplineModel(std::vector<KnotVector> axes, std::vector<double> controls,
                      std::vector<AxisExtent> extents = {});

    std::size_t dim() const noexcept { return axes_.size(); }
    const KnotVector& axis(std::size_t l) const { return axes_.at(l); }
    const std::vector<KnotVector>& axes() const noexcept { return axes_; }
    const std::vector<AxisExtent>& extents() const noexcept { return extents_; }
    std::span<const double> controls() const noexcept { return controls_; }
    std::span<const std::size_t> control_counts() const noexcept { return counts_; }
    std::span<const std::size_t> strides() const noexcept { return strides_; }

    double control(std::span<const std::size_t> index) const;

    /// Sample counts of the raster this model was fitted to, or empty when unknown.
    const std::vector<std::size_t>& source_samples() const noexcept { return source_samples_; }
    void set_source_samples(std::vector<std::size_t> samples);

    /// F(u) using only the (p+1)^d active controls. Throws DomainError outside [0,1]^d.
    double evaluate(std::span<const double> u) const;

    /// Exact B-spline representation of dF/du_axis. Repeated-knot zero denominators give 0.
    TensorSplineModel derivative(std::size_t axis) const;

    /// Positive-width spans in lexicographic order (last axis fastest).
    std::vector<KnotSpan> spans() const;
    std::size_t span_count() const;

    std::vector<double> to_param(std::span<const double> physical) const;
    std::vector<double> to_physical(std::span<const double> param) const;

private:
    std::vector<KnotVector> axes_;
    std::vector<double> controls_;
    std::vector<AxisExtent> extents_;
    std::vector<std::size_t> counts_;
    std::vector<std::size_t> strides_;
    std::vector<std::size_t> source_samples_;
};

}  // namespace cpe
