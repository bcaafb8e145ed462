#pragma once

#include "cpe/grid_field.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>

namespace cpe {

/// Scaled Schwefel function 0.5 * (418.9829 d - sum x_i sin(sqrt|x_i|)).
double schwefel(std::span<const double> x);

struct SchwefelSpec {
    std::size_t dim = 2;
    int k = 15;
    std::optional<std::pair<double, double>> domain;  // overrides +-((k + 1/2) pi)^2
    std::size_t samples = 200;                       // per axis

    std::pair<double, double> bounds() const;

    // Census on the symmetric domain +-((k + 1/2) pi)^2.
    std::size_t expected_critical_points() const;  // (2k - 2)^d
    std::size_t expected_minima() const;           // (k - 1)^d
    std::size_t expected_maxima() const;           // (k - 1)^d
    std::size_t expected_saddles() const;          // 2 (k - 1)^d, for d = 2
};

GridScalarField generate_field(const SchwefelSpec& spec);

/// Closed-form test fields on [lo, hi]^d:
///   bump     exp(-|x|^2 / (2 * 0.25^2))   one maximum at the origin
///   bowl     sum x_l^2                    one minimum at the origin
///   saddle   x_0^2 - sum_{l>0} x_l^2      one saddle at the origin
///   ramp     sum (l + 1) x_l               no critical points
///   constant 1
enum class FieldKind { bump, bowl, saddle, ramp, constant };

std::optional<FieldKind> parse_field_kind(std::string_view name);
double analytic_field(FieldKind kind, std::span<const double> x);

GridScalarField generate_field(FieldKind kind, std::size_t dim, std::size_t samples, double lo = -1.0,
                               double hi = 1.0);

}  // namespace cpe
