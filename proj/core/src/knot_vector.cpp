#include "cpe/knot_vector.hpp"

#include "cpe/error.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <stdexcept>
#include <string>

namespace cpe {

KnotVector::KnotVector(int degree, std::vector<double> knots)
    : degree_(degree), knots_(std::move(knots)) {
    if (degree_ < 0 || degree_ > kMaxDegree) {
        throw std::invalid_argument("knot vector: degree " + std::to_string(degree_) +
                                    " outside [0, " + std::to_string(kMaxDegree) + "]");
    }
    const auto p = static_cast<std::size_t>(degree_);
    if (knots_.size() < 2 * (p + 1)) {
        throw std::invalid_argument("knot vector: need at least 2(p+1) knots");
    }
    if (!std::is_sorted(knots_.begin(), knots_.end())) {
        throw std::invalid_argument("knot vector: knots must be nondecreasing");
    }
    for (std::size_t i = 0; i <= p; ++i) {
        if (knots_[i] != 0.0 || knots_[knots_.size() - 1 - i] != 1.0) {
            throw std::invalid_argument("knot vector: first and last p+1 knots must be 0 and 1");
        }
    }
}

KnotVector KnotVector::clamped_uniform(int degree, std::size_t control_count) {
    const auto p = static_cast<std::size_t>(degree);
    if (degree < 0 || control_count < p + 1) {
        throw std::invalid_argument("clamped_uniform: need at least p+1 control points");
    }
    std::vector<double> knots(control_count + p + 1, 0.0);
    const std::size_t intervals = control_count - p;
    for (std::size_t i = 1; i < intervals; ++i) {
        knots[p + i] = static_cast<double>(i) / static_cast<double>(intervals);
    }
    std::fill(knots.end() - static_cast<std::ptrdiff_t>(p + 1), knots.end(), 1.0);
    return KnotVector(degree, std::move(knots));
}

std::size_t KnotVector::find_span(double u) const {
    if (!(u >= 0.0 && u <= 1.0)) {
        throw DomainError("parameter " + std::to_string(u) + " outside [0,1]");
    }
    const std::size_t n = control_count();
    if (u >= knots_[n]) {
        // last positive-width span; clamped ends make t_n == 1
        std::size_t j = n - 1;
        while (j > 0 && knots_[j] == knots_[j + 1]) --j;
        return j;
    }
    auto it = std::upper_bound(knots_.begin(), knots_.end(), u);
    return static_cast<std::size_t>(it - knots_.begin()) - 1;
}

void KnotVector::basis(double u, std::size_t span, std::span<double> out) const {
    const int p = degree_;
    assert(out.size() >= static_cast<std::size_t>(p + 1));
    std::array<double, kMaxDegree + 1> left{};
    std::array<double, kMaxDegree + 1> right{};
    out[0] = 1.0;
    for (int j = 1; j <= p; ++j) {
        left[j] = u - knots_[span + 1 - j];
        right[j] = knots_[span + j] - u;
        double saved = 0.0;
        for (int r = 0; r < j; ++r) {
            const double temp = out[r] / (right[r + 1] + left[j - r]);
            out[r] = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        out[j] = saved;
    }
}

std::vector<std::size_t> KnotVector::span_indices() const {
    std::vector<std::size_t> spans;
    for (std::size_t j = 0; j + 1 < knots_.size(); ++j) {
        if (knots_[j] < knots_[j + 1]) spans.push_back(j);
    }
    return spans;
}

KnotVector KnotVector::derivative() const {
    if (degree_ < 1) throw std::invalid_argument("derivative of a degree-0 knot vector");
    return KnotVector(degree_ - 1, std::vector<double>(knots_.begin() + 1, knots_.end() - 1));
}

KnotVector KnotVector::with_knot(double t) const {
    if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("inserted knot must lie in (0,1)");
    std::vector<double> knots = knots_;
    knots.insert(std::upper_bound(knots.begin(), knots.end(), t), t);
    return KnotVector(degree_, std::move(knots));
}

}  // namespace cpe
