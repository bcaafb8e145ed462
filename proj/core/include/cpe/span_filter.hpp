#pragma once

#include "cpe/derivatives.hpp"
#include "cpe/tensor_spline.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace cpe {

struct FiltrationResult {
    std::size_t total = 0;
    std::vector<std::size_t> retained;           // indices into model.spans(), ascending
    std::size_t skipped = 0;
    std::vector<std::size_t> eliminated_by_axis;  // first excluding axis per skipped span

    double retained_fraction() const {
        return total == 0 ? 0.0 : static_cast<double>(retained.size()) / static_cast<double>(total);
    }
};

/// True when the control window of `derivative` over `span` is strictly one-signed, so the
/// derivative cannot vanish there (strong convex hull property). A zero control keeps the span.
bool excludes_zero(const TensorSplineModel& derivative, std::size_t axis, const KnotSpan& span);

/// Keeps the spans whose every first-derivative control window straddles (or touches) zero.
/// `first_derivatives[l]` must be model.derivative(l).
FiltrationResult filter_spans(const TensorSplineModel& model,
                              std::span<const TensorSplineModel> first_derivatives,
                              std::size_t threads = 0);

FiltrationResult filter_spans(const TensorSplineModel& model, const DerivativeSet& derivs,
                              std::size_t threads = 0);

}  // namespace cpe
