#include "cpe/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cpe {

double schwefel(std::span<const double> x) {
    double sum = 0.0;
    for (double xi : x) sum += xi * std::sin(std::sqrt(std::abs(xi)));
    return 0.5 * (418.9829 * static_cast<double>(x.size()) - sum);
}

std::pair<double, double> SchwefelSpec::bounds() const {
    if (domain) return *domain;
    const double r = (k + 0.5) * std::numbers::pi;
    return {-r * r, r * r};
}

namespace {
std::size_t ipow(std::size_t base, std::size_t e) {
    std::size_t r = 1;
    while (e-- > 0) r *= base;
    return r;
}
}  // namespace

std::size_t SchwefelSpec::expected_critical_points() const {
    return ipow(static_cast<std::size_t>(2 * k - 2), dim);
}
std::size_t SchwefelSpec::expected_minima() const { return ipow(static_cast<std::size_t>(k - 1), dim); }
std::size_t SchwefelSpec::expected_maxima() const { return ipow(static_cast<std::size_t>(k - 1), dim); }
std::size_t SchwefelSpec::expected_saddles() const { return 2 * ipow(static_cast<std::size_t>(k - 1), dim); }

namespace {

template <class F>
GridScalarField raster(std::size_t dim, std::size_t samples, double lo, double hi, F&& f) {
    if (dim == 0) throw std::invalid_argument("field dimension must be positive");
    if (samples < 2) throw std::invalid_argument("need at least 2 samples per axis");
    std::vector<std::size_t> counts(dim, samples);
    std::vector<AxisExtent> extents(dim, AxisExtent{lo, hi});
    std::size_t total = 1;
    for (std::size_t l = 0; l < dim; ++l) total *= samples;
    std::vector<double> values(total);
    std::vector<double> x(dim);
    std::vector<std::size_t> idx(dim, 0);
    for (std::size_t flat = 0; flat < total; ++flat) {
        for (std::size_t l = 0; l < dim; ++l) {
            x[l] = extents[l].to_physical(static_cast<double>(idx[l]) / static_cast<double>(samples - 1));
        }
        values[flat] = f(x);
        for (std::size_t l = dim; l-- > 0;) {
            if (++idx[l] < samples) break;
            idx[l] = 0;
        }
    }
    return GridScalarField(std::move(counts), std::move(extents), std::move(values));
}

}  // namespace

GridScalarField generate_field(const SchwefelSpec& spec) {
    const auto [lo, hi] = spec.bounds();
    return raster(spec.dim, spec.samples, lo, hi, [](std::span<const double> x) { return schwefel(x); });
}

std::optional<FieldKind> parse_field_kind(std::string_view name) {
    if (name == "bump") return FieldKind::bump;
    if (name == "bowl") return FieldKind::bowl;
    if (name == "saddle") return FieldKind::saddle;
    if (name == "ramp") return FieldKind::ramp;
    if (name == "const" || name == "constant") return FieldKind::constant;
    return std::nullopt;
}

double analytic_field(FieldKind kind, std::span<const double> x) {
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    switch (kind) {
        case FieldKind::bump: return std::exp(-r2 / (2.0 * 0.25 * 0.25));
        case FieldKind::bowl: return r2;
        case FieldKind::saddle: return 2.0 * x[0] * x[0] - r2;
        case FieldKind::ramp: {
            double s = 0.0;
            for (std::size_t l = 0; l < x.size(); ++l) s += static_cast<double>(l + 1) * x[l];
            return s;
        }
        case FieldKind::constant: return 1.0;
    }
    return 0.0;
}

GridScalarField generate_field(FieldKind kind, std::size_t dim, std::size_t samples, double lo, double hi) {
    return raster(dim, samples, lo, hi, [kind](std::span<const double> x) { return analytic_field(kind, x); });
}

}  // namespace cpe
