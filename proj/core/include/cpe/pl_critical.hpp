#pragma once

#include "cpe/critical_point.hpp"
#include "cpe/tensor_spline.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace cpe {

/// Uniform vertex lattice over [0,1]^d with values evaluated through a spline model.
struct SampledGrid {
    std::vector<std::size_t> counts;
    std::vector<AxisExtent> extents;
    std::vector<double> values;  // row-major, last axis fastest

    std::size_t dim() const noexcept { return counts.size(); }
    double param(std::size_t axis, std::size_t i) const {
        return static_cast<double>(i) / static_cast<double>(counts[axis] - 1);
    }
    std::vector<std::size_t> unflatten(std::size_t flat) const;
    std::size_t flatten(std::span<const std::size_t> index) const;
};

/// Vertex values are exactly model.evaluate at the vertex parameters.
SampledGrid sample_grid(const TensorSplineModel& model, std::span<const std::size_t> resolution,
                        std::size_t threads = 0);

/// Per-axis resolution for a volume upsampling ratio: factor f = ratio^(1/d) must be an integer
/// and each axis becomes (m - 1) * f + 1, keeping the source lattice as a sub-lattice.
std::vector<std::size_t> upsampled_resolution(std::span<const std::size_t> source, std::size_t ratio);

struct PLCriticalPoint {
    std::size_t vertex = 0;
    std::vector<std::size_t> coords;
    std::vector<double> location;  // parameter space
    std::vector<double> physical;
    double value = 0.0;
    MorseType type = MorseType::minimum;
    int index = 0;
    bool boundary = false;
    std::size_t lower_components = 0;
    std::size_t upper_components = 0;
};

/// Connected-component counts of the lower and upper link of one vertex in the Freudenthal
/// triangulation. Ties in value are broken by flat vertex index. Boundary vertices use only
/// the part of their link that lies inside the grid.
struct LinkComponents {
    std::size_t lower = 0;
    std::size_t upper = 0;
    bool boundary = false;
};
LinkComponents link_components(const SampledGrid& grid, std::size_t vertex);

/// Neighbor offsets of the Freudenthal triangulation: every nonzero vector in {0,1}^d and its
/// negation (6 in 2-D, 14 in 3-D).
std::vector<std::vector<int>> freudenthal_offsets(std::size_t dim);

struct PLOptions {
    bool include_boundary = false;
    std::size_t threads = 0;
};

/// Banchoff classification of every vertex: minimum when the lower link is empty, maximum when
/// the upper link is empty, regular when both are connected, saddle otherwise. Supports d = 2, 3
/// (UnsupportedDimension otherwise). Sorted by vertex index.
std::vector<PLCriticalPoint> pl_critical_points(const SampledGrid& grid, const PLOptions& options = {});

}  // namespace cpe
