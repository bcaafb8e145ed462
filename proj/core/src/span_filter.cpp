#include "cpe/span_filter.hpp"

#include "cpe/parallel.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace cpe {

bool excludes_zero(const TensorSplineModel& derivative, std::size_t axis, const KnotSpan& span) {
    const std::size_t d = span.dim();
    // The derivative knot vector drops its first knot and one degree, so on the differentiated
    // axis the window still starts at j-p but holds p entries instead of p+1.
    if (axis >= d) throw std::out_of_range("excludes_zero: axis out of range");
    const std::vector<std::size_t>& first = span.first_control;
    std::vector<std::size_t> extent(d);
    for (std::size_t l = 0; l < d; ++l) {
        extent[l] = static_cast<std::size_t>(derivative.axis(l).degree()) + 1;
    }

    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    std::vector<std::size_t> idx(first);
    while (true) {
        const double c = derivative.control(idx);
        lo = std::min(lo, c);
        hi = std::max(hi, c);
        if (lo <= 0.0 && hi >= 0.0) return false;
        std::size_t l = d;
        while (l-- > 0) {
            if (++idx[l] < first[l] + extent[l]) break;
            idx[l] = first[l];
        }
        if (l == static_cast<std::size_t>(-1)) break;
    }
    return true;
}

namespace {

template <class Derivative>
FiltrationResult filter_impl(const TensorSplineModel& model, Derivative&& derivative, std::size_t threads) {
    const std::size_t d = model.dim();
    const auto spans = model.spans();

    // 0 = retained, l+1 = eliminated by axis l; written per span so assembly is order independent.
    std::vector<std::size_t> verdict(spans.size(), 0);
    parallel_for(spans.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t s = begin; s < end; ++s) {
            for (std::size_t l = 0; l < d; ++l) {
                if (excludes_zero(derivative(l), l, spans[s])) {
                    verdict[s] = l + 1;
                    break;
                }
            }
        }
    });

    FiltrationResult result;
    result.total = spans.size();
    result.eliminated_by_axis.assign(d, 0);
    for (std::size_t s = 0; s < spans.size(); ++s) {
        if (verdict[s] == 0) {
            result.retained.push_back(s);
        } else {
            ++result.skipped;
            ++result.eliminated_by_axis[verdict[s] - 1];
        }
    }
    return result;
}

}  // namespace

FiltrationResult filter_spans(const TensorSplineModel& model,
                              std::span<const TensorSplineModel> first_derivatives, std::size_t threads) {
    if (first_derivatives.size() != model.dim()) {
        throw std::invalid_argument("filter_spans: need one derivative model per axis");
    }
    return filter_impl(model, [&](std::size_t l) -> const TensorSplineModel& { return first_derivatives[l]; },
                       threads);
}

FiltrationResult filter_spans(const TensorSplineModel& model, const DerivativeSet& derivs, std::size_t threads) {
    return filter_impl(model, [&](std::size_t l) -> const TensorSplineModel& { return derivs.first(l); }, threads);
}

}  // namespace cpe
