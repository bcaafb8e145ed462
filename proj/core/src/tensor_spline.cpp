#include "cpe/tensor_spline.hpp"

#include "cpe/error.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace cpe {

std::vector<double> KnotSpan::center() const {
    std::vector<double> c(lo.size());
    for (std::size_t l = 0; l < lo.size(); ++l) c[l] = 0.5 * (lo[l] + hi[l]);
    return c;
}

double KnotSpan::diagonal() const {
    double s = 0.0;
    for (std::size_t l = 0; l < lo.size(); ++l) s += (hi[l] - lo[l]) * (hi[l] - lo[l]);
    return std::sqrt(s);
}

TensorSplineModel::TensorSplineModel(std::vector<KnotVector> axes, std::vector<double> controls,
                                     std::vector<AxisExtent> extents)
    : axes_(std::move(axes)), controls_(std::move(controls)), extents_(std::move(extents)) {
    if (axes_.empty()) throw std::invalid_argument("spline model needs at least one axis");
    if (extents_.empty()) extents_.assign(axes_.size(), AxisExtent{});
    if (extents_.size() != axes_.size()) {
        throw std::invalid_argument("spline model: one extent per axis required");
    }
    counts_.resize(axes_.size());
    strides_.resize(axes_.size());
    std::size_t total = 1;
    for (std::size_t l = axes_.size(); l-- > 0;) {
        counts_[l] = axes_[l].control_count();
        strides_[l] = total;
        total *= counts_[l];
    }
    if (controls_.size() != total) {
        throw std::invalid_argument("spline model: expected " + std::to_string(total) +
                                    " controls, got " + std::to_string(controls_.size()));
    }
}

double TensorSplineModel::control(std::span<const std::size_t> index) const {
    std::size_t flat = 0;
    for (std::size_t l = 0; l < dim(); ++l) flat += index[l] * strides_[l];
    return controls_[flat];
}

void TensorSplineModel::set_source_samples(std::vector<std::size_t> samples) {
    if (!samples.empty() && samples.size() != dim()) {
        throw std::invalid_argument("source sample counts must have one entry per axis");
    }
    source_samples_ = std::move(samples);
}

namespace {

// Contracts the control window one axis at a time: the innermost axis is summed first.
double contract(const TensorSplineModel& m, std::span<const std::array<double, kMaxDegree + 1>> basis,
                std::span<const std::size_t> first, std::size_t axis, std::size_t offset) {
    const auto p = static_cast<std::size_t>(m.axis(axis).degree());
    const std::size_t stride = m.strides()[axis];
    const std::size_t base = offset + first[axis] * stride;
    double sum = 0.0;
    if (axis + 1 == m.dim()) {
        const double* c = m.controls().data() + base;
        for (std::size_t i = 0; i <= p; ++i) sum += basis[axis][i] * c[i * stride];
    } else {
        for (std::size_t i = 0; i <= p; ++i) {
            sum += basis[axis][i] * contract(m, basis, first, axis + 1, base + i * stride);
        }
    }
    return sum;
}

}  // namespace

double TensorSplineModel::evaluate(std::span<const double> u) const {
    if (u.size() != dim()) throw std::invalid_argument("evaluate: point dimension mismatch");
    constexpr std::size_t kStackDims = 8;
    std::array<std::array<double, kMaxDegree + 1>, kStackDims> stack_basis;
    std::array<std::size_t, kStackDims> stack_first;
    std::vector<std::array<double, kMaxDegree + 1>> heap_basis;
    std::vector<std::size_t> heap_first;
    std::span<std::array<double, kMaxDegree + 1>> basis(stack_basis.data(), dim());
    std::span<std::size_t> first(stack_first.data(), dim());
    if (dim() > kStackDims) {
        heap_basis.resize(dim());
        heap_first.resize(dim());
        basis = heap_basis;
        first = heap_first;
    }
    for (std::size_t l = 0; l < dim(); ++l) {
        const std::size_t j = axes_[l].find_span(u[l]);
        axes_[l].basis(u[l], j, basis[l]);
        first[l] = j - static_cast<std::size_t>(axes_[l].degree());
    }
    return contract(*this, basis, first, 0, 0);
}

TensorSplineModel TensorSplineModel::derivative(std::size_t axis) const {
    if (axis >= dim()) throw std::out_of_range("derivative: axis out of range");
    const KnotVector& kv = axes_[axis];
    const int p = kv.degree();
    if (p < 1) throw std::invalid_argument("derivative: degree must be >= 1");
    const auto t = kv.knots();
    const std::size_t n = counts_[axis];

    std::vector<KnotVector> axes = axes_;
    axes[axis] = kv.derivative();

    // Scaled differences along `axis`; every other index is carried through unchanged.
    std::vector<std::size_t> new_counts = counts_;
    new_counts[axis] = n - 1;
    const std::size_t outer =
        std::accumulate(counts_.begin(), counts_.begin() + static_cast<std::ptrdiff_t>(axis),
                        std::size_t{1}, std::multiplies<>());
    const std::size_t inner = strides_[axis];
    std::vector<double> out(outer * (n - 1) * inner);
    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t j = 0; j + 1 < n; ++j) {
            const double denom = t[j + p + 1] - t[j + 1];
            const double scale = denom > 0.0 ? p / denom : 0.0;
            const double* lo = controls_.data() + (o * n + j) * inner;
            const double* hi = lo + inner;
            double* dst = out.data() + (o * (n - 1) + j) * inner;
            for (std::size_t i = 0; i < inner; ++i) dst[i] = scale * (hi[i] - lo[i]);
        }
    }
    TensorSplineModel result(std::move(axes), std::move(out), extents_);
    result.source_samples_ = source_samples_;
    return result;
}

std::vector<KnotSpan> TensorSplineModel::spans() const {
    std::vector<std::vector<std::size_t>> per_axis(dim());
    for (std::size_t l = 0; l < dim(); ++l) per_axis[l] = axes_[l].span_indices();

    std::vector<KnotSpan> spans;
    spans.reserve(span_count());
    std::vector<std::size_t> pos(dim(), 0);
    while (true) {
        KnotSpan s;
        s.knot_index.resize(dim());
        s.first_control.resize(dim());
        s.lo.resize(dim());
        s.hi.resize(dim());
        for (std::size_t l = 0; l < dim(); ++l) {
            const std::size_t j = per_axis[l][pos[l]];
            const auto t = axes_[l].knots();
            s.knot_index[l] = j;
            s.first_control[l] = j - static_cast<std::size_t>(axes_[l].degree());
            s.lo[l] = t[j];
            s.hi[l] = t[j + 1];
        }
        spans.push_back(std::move(s));
        std::size_t l = dim();
        while (l-- > 0) {
            if (++pos[l] < per_axis[l].size()) break;
            pos[l] = 0;
        }
        if (l == static_cast<std::size_t>(-1)) break;
    }
    return spans;
}

std::size_t TensorSplineModel::span_count() const {
    std::size_t total = 1;
    for (const auto& kv : axes_) total *= kv.span_indices().size();
    return total;
}

std::vector<double> TensorSplineModel::to_param(std::span<const double> physical) const {
    std::vector<double> u(dim());
    for (std::size_t l = 0; l < dim(); ++l) u[l] = extents_[l].to_param(physical[l]);
    return u;
}

std::vector<double> TensorSplineModel::to_physical(std::span<const double> param) const {
    std::vector<double> x(dim());
    for (std::size_t l = 0; l < dim(); ++l) x[l] = extents_[l].to_physical(param[l]);
    return x;
}

}  // namespace cpe
