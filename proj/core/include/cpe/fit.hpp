#pragma once

#include "cpe/grid_field.hpp"
#include "cpe/tensor_spline.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace cpe {

struct FitReport {
    double rms = 0.0;
    double max_error = 0.0;
    std::size_t rounds = 0;                   // knot-insertion rounds performed
    std::vector<std::size_t> control_counts;  // final, per axis
    std::vector<double> rms_history;          // one entry per fit, initial fit first
    std::vector<double> max_error_history;
};

struct FitResult {
    TensorSplineModel model;
    FitReport report;
};

/// Least-squares fit over fixed knots. The tensor structure is exploited: the full normal
/// equations factor into one (N_l^T N_l) solve per axis applied as mode products.
/// Throws FitError naming the axis when the per-axis system is rank deficient.
FitResult fit_with_knots(const GridScalarField& field, std::vector<KnotVector> knots);

/// Fit with clamped uniform knots for the given per-axis control counts.
FitResult fit_fixed(const GridScalarField& field, int degree, std::span<const std::size_t> controls);

struct AdaptiveOptions {
    double tolerance = 1e-3;                   // target max pointwise error
    std::size_t max_rounds = 10;
    std::vector<std::size_t> initial_controls;  // empty: degree+1 per axis
};

/// Fit, measure pointwise error, and bisect the span holding the worst sample on every axis;
/// repeat until max error <= tolerance or max_rounds insertion batches have been made.
FitResult fit_adaptive(const GridScalarField& field, int degree, const AdaptiveOptions& options);

/// Pointwise residuals field - model at every raster sample (same layout as the field).
std::vector<double> residuals(const GridScalarField& field, const TensorSplineModel& model);

}  // namespace cpe
