#pragma once

#include "cpe/critical_point.hpp"
#include "cpe/derivatives.hpp"
#include "cpe/span_filter.hpp"
#include "cpe/tensor_spline.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace cpe {

struct NewtonConfig {
    double eps = 1e-7;                // stop when the gradient norm drops below eps
    std::size_t max_iter = 20;
    double delta = 1e-13;             // |det H| floor; smaller counts as degenerate
    double xi_factor = 5.0;           // escape radius in span diagonals
    double tau = 0.0;                 // duplicate radius; <= 0 picks default_tau(model)
    std::size_t init_per_axis = 0;    // starts per axis; 0 means degree + 1
    std::size_t threads = 0;          // 0 means default_thread_count()
};

/// Duplicate radius in parameter space: 0.999 of the finest source-raster cell, or 1e-4 when
/// the model does not record its source raster.
double default_tau(const TensorSplineModel& model);

struct Classification {
    int index = 0;
    MorseType type = MorseType::minimum;
};

/// Morse index (count of negative eigenvalues) of a symmetric Hessian.
/// Throws ClassificationError when |det H| < delta or an eigenvalue is exactly zero.
Classification classify(const Eigen::MatrixXd& hessian, double delta = 0.0);

struct SpanExtraction {
    std::vector<CriticalPoint> points;
    std::size_t starts = 0;
    std::size_t iterations = 0;  // Newton updates over all starts
    std::size_t exhausted = 0;   // starts that used all max_iter updates
    std::size_t singular = 0;    // starts abandoned on |det H| < delta
    std::size_t escaped = 0;     // starts that left the xi ball or the domain
};

/// Newton iteration from a uniform (init_per_axis)^d grid of cell-centred starts inside one span.
/// Accepts converged points that lie in the span (half-open, closed on the domain's upper face),
/// off the domain boundary, and at least tau from points already accepted in this span.
SpanExtraction extract_in_span(const KnotSpan& span, const TensorSplineModel& model, const DerivativeSet& derivs,
                               const NewtonConfig& cfg, double tau);

struct StageSeconds {
    double derivatives = 0.0;
    double filtration = 0.0;
    double newton = 0.0;
    double dedup = 0.0;
    double total = 0.0;
};

struct ExtractionStats {
    std::size_t spans_total = 0;
    std::size_t spans_processed = 0;
    std::size_t starts = 0;
    std::size_t total_iterations = 0;
    std::size_t exhausted_starts = 0;
    std::size_t candidates = 0;  // accepted in spans, before global dedup
    std::size_t accepted = 0;
    double average_iterations = 0.0;  // over accepted points
    double average_gradient = 0.0;    // over accepted points
    double tau = 0.0;
    StageSeconds seconds;

    double newton_fraction() const { return seconds.total > 0.0 ? seconds.newton / seconds.total : 0.0; }
};

struct ExtractionResult {
    std::vector<CriticalPoint> points;  // sorted lexicographically by parameter location
    FiltrationResult filtration;
    ExtractionStats stats;
};

/// Span filtration, parallel per-span Newton extraction, then global spatial-hash dedup.
/// Output is identical for any thread count.
ExtractionResult extract_all(const TensorSplineModel& model, const NewtonConfig& cfg);

}  // namespace cpe
