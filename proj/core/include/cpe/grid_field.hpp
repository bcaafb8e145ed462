#pragma once

#include "cpe/tensor_spline.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace cpe {

/// Axis-aligned raster of scalar samples. Values are row-major with the last axis fastest.
/// Sample i on axis l sits at physical coordinate min + i * (max - min) / (m_l - 1),
/// parameter i / (m_l - 1).
class GridScalarField {
public:
    GridScalarField() = default;
    GridScalarField(std::vector<std::size_t> counts, std::vector<AxisExtent> extents,
                    std::vector<double> values);

    std::size_t dim() const noexcept { return counts_.size(); }
    std::span<const std::size_t> counts() const noexcept { return counts_; }
    const std::vector<AxisExtent>& extents() const noexcept { return extents_; }
    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }

    double param(std::size_t axis, std::size_t i) const;
    double coordinate(std::size_t axis, std::size_t i) const;
    /// Physical spacing between neighboring samples on an axis.
    double cell_size(std::size_t axis) const;

    double at(std::span<const std::size_t> index) const;
    /// Multi-index of flat sample position `flat`.
    std::vector<std::size_t> unflatten(std::size_t flat) const;

private:
    std::vector<std::size_t> counts_;
    std::vector<AxisExtent> extents_;
    std::vector<double> values_;
};

/// Binary grid format:
///
///     MFAGRID
///     version 1
///     dim <d>
///     counts <m_1> ... <m_d>
///     range <min> <max>     (one per axis)
///     encoding f64le
///     data
///     <prod(m) little-endian IEEE-754 doubles>
void write_grid(std::ostream& os, const GridScalarField& field);
GridScalarField read_grid_binary(std::istream& is);

/// CSV with a header row: `x,value` (d = 1) or `x,y,value` (d = 2). Rows may come in any
/// order but must cover a full uniform raster.
GridScalarField read_grid_csv(std::istream& is);
void write_grid_csv(std::ostream& os, const GridScalarField& field);

/// Dispatches on the leading magic string; anything else is parsed as CSV.
GridScalarField load_grid(const std::filesystem::path& path);
void save_grid(const std::filesystem::path& path, const GridScalarField& field);

}  // namespace cpe
