#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cpe {

/// Largest supported polynomial degree; bounds the stack buffers used for basis values.
inline constexpr int kMaxDegree = 12;

/// Clamped (open) knot vector of a single axis.
///
/// Knots are nondecreasing in [0,1], the first and last degree+1 knots equal 0 and 1,
/// and knot count = control count + degree + 1. Span indices follow the usual convention:
/// span j is the interval [t_j, t_{j+1}) and governs the basis functions j-p .. j.
class KnotVector {
public:
    KnotVector() = default;
    KnotVector(int degree, std::vector<double> knots);

    /// Uniform interior knots for the given number of control points.
    static KnotVector clamped_uniform(int degree, std::size_t control_count);

    int degree() const noexcept { return degree_; }
    std::span<const double> knots() const noexcept { return knots_; }
    std::size_t control_count() const noexcept { return knots_.size() - degree_ - 1; }

    /// Span index j with t_j <= u < t_{j+1}; u == 1 maps to the last positive-width span.
    /// Throws DomainError when u is outside [0,1].
    std::size_t find_span(double u) const;

    /// Writes the degree+1 nonzero basis values at u (for span j = find_span(u)) into out.
    void basis(double u, std::size_t span, std::span<double> out) const;

    /// Indices j of every positive-width span [t_j, t_{j+1}], ascending.
    std::vector<std::size_t> span_indices() const;

    /// Knot vector of the derivative spline: degree-1, first and last knot dropped.
    KnotVector derivative() const;

    /// Copy with one extra knot at t (interior, strictly inside (0,1)).
    KnotVector with_knot(double t) const;

    bool operator==(const KnotVector&) const = default;

private:
    int degree_ = 0;
    std::vector<double> knots_;
};

}  // namespace cpe
