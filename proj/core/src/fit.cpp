#include "cpe/fit.hpp"

#include "cpe/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numeric>

namespace cpe {

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Dense collocation matrix of one axis: rows are samples, columns basis functions.
Eigen::MatrixXd collocation(const KnotVector& kv, std::size_t samples) {
    const std::size_t n = kv.control_count();
    const auto p = static_cast<std::size_t>(kv.degree());
    Eigen::MatrixXd N = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(samples), static_cast<Eigen::Index>(n));
    std::array<double, kMaxDegree + 1> b{};
    for (std::size_t i = 0; i < samples; ++i) {
        const double u = static_cast<double>(i) / static_cast<double>(samples - 1);
        const std::size_t j = kv.find_span(u);
        kv.basis(u, j, b);
        for (std::size_t k = 0; k <= p; ++k) {
            N(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j - p + k)) = b[k];
        }
    }
    return N;
}

// out = tensor contracted along `axis` with op (rows x shape[axis]).
std::vector<double> mode_product(std::span<const double> tensor, std::vector<std::size_t>& shape,
                                 std::size_t axis, const Eigen::MatrixXd& op) {
    const std::size_t outer = std::accumulate(shape.begin(), shape.begin() + static_cast<std::ptrdiff_t>(axis),
                                              std::size_t{1}, std::multiplies<>());
    const std::size_t inner = std::accumulate(shape.begin() + static_cast<std::ptrdiff_t>(axis) + 1, shape.end(),
                                              std::size_t{1}, std::multiplies<>());
    const auto len = static_cast<std::size_t>(op.cols());
    const auto rows = static_cast<std::size_t>(op.rows());
    std::vector<double> out(outer * rows * inner);
    for (std::size_t o = 0; o < outer; ++o) {
        Eigen::Map<const RowMatrix> in(tensor.data() + o * len * inner, static_cast<Eigen::Index>(len),
                                       static_cast<Eigen::Index>(inner));
        Eigen::Map<RowMatrix> dst(out.data() + o * rows * inner, static_cast<Eigen::Index>(rows),
                                  static_cast<Eigen::Index>(inner));
        dst.noalias() = op * in;
    }
    shape[axis] = rows;
    return out;
}

struct ErrorSummary {
    double rms = 0.0;
    double max_error = 0.0;
    std::size_t worst = 0;
};

ErrorSummary summarize(std::span<const double> residual) {
    ErrorSummary s;
    double sq = 0.0;
    for (std::size_t i = 0; i < residual.size(); ++i) {
        const double a = std::abs(residual[i]);
        sq += a * a;
        if (a > s.max_error) {
            s.max_error = a;
            s.worst = i;
        }
    }
    s.rms = std::sqrt(sq / static_cast<double>(residual.size()));
    return s;
}

}  // namespace

std::vector<double> residuals(const GridScalarField& field, const TensorSplineModel& model) {
    std::vector<std::size_t> shape(model.control_counts().begin(), model.control_counts().end());
    std::vector<double> approx(model.controls().begin(), model.controls().end());
    for (std::size_t l = 0; l < field.dim(); ++l) {
        approx = mode_product(approx, shape, l, collocation(model.axis(l), field.counts()[l]));
    }
    for (std::size_t i = 0; i < approx.size(); ++i) approx[i] = field.values()[i] - approx[i];
    return approx;
}

FitResult fit_with_knots(const GridScalarField& field, std::vector<KnotVector> knots) {
    const std::size_t d = field.dim();
    if (knots.size() != d) throw std::invalid_argument("fit: one knot vector per axis required");

    std::vector<std::size_t> shape(field.counts().begin(), field.counts().end());
    std::vector<double> coeffs(field.values().begin(), field.values().end());
    for (std::size_t l = 0; l < d; ++l) {
        const std::size_t n = knots[l].control_count();
        const std::size_t m = field.counts()[l];
        if (m < n) {
            throw FitError(l, std::to_string(n) + " control points exceed " + std::to_string(m) + " samples");
        }
        const Eigen::MatrixXd N = collocation(knots[l], m);
        const Eigen::MatrixXd normal = N.transpose() * N;
        Eigen::LLT<Eigen::MatrixXd> llt(normal);
        if (llt.info() != Eigen::Success || llt.rcond() < 1e-13) {
            throw FitError(l, "normal equations are rank deficient");
        }
        const Eigen::MatrixXd solve = llt.solve(N.transpose());
        coeffs = mode_product(coeffs, shape, l, solve);
    }

    TensorSplineModel model(std::move(knots), std::move(coeffs), field.extents());
    model.set_source_samples(std::vector<std::size_t>(field.counts().begin(), field.counts().end()));

    const auto err = summarize(residuals(field, model));
    FitReport report;
    report.rms = err.rms;
    report.max_error = err.max_error;
    report.control_counts.assign(model.control_counts().begin(), model.control_counts().end());
    report.rms_history = {err.rms};
    report.max_error_history = {err.max_error};
    return {std::move(model), std::move(report)};
}

FitResult fit_fixed(const GridScalarField& field, int degree, std::span<const std::size_t> controls) {
    if (controls.size() != field.dim()) throw std::invalid_argument("fit: one control count per axis required");
    std::vector<KnotVector> knots;
    for (std::size_t l = 0; l < field.dim(); ++l) {
        if (controls[l] < static_cast<std::size_t>(degree) + 1) {
            throw FitError(l, "need at least degree+1 control points");
        }
        knots.push_back(KnotVector::clamped_uniform(degree, controls[l]));
    }
    return fit_with_knots(field, std::move(knots));
}

FitResult fit_adaptive(const GridScalarField& field, int degree, const AdaptiveOptions& options) {
    if (!(options.tolerance > 0.0)) throw std::invalid_argument("fit: tolerance must be positive");
    std::vector<std::size_t> initial = options.initial_controls;
    if (initial.empty()) initial.assign(field.dim(), static_cast<std::size_t>(degree) + 1);

    FitResult best = fit_fixed(field, degree, initial);
    std::vector<double> rms_history = best.report.rms_history;
    std::vector<double> max_history = best.report.max_error_history;
    std::size_t rounds = 0;

    while (best.report.max_error > options.tolerance && rounds < options.max_rounds) {
        const auto err = summarize(residuals(field, best.model));
        const auto worst = field.unflatten(err.worst);

        std::vector<KnotVector> knots = best.model.axes();
        bool inserted = false;
        for (std::size_t l = 0; l < field.dim(); ++l) {
            if (knots[l].control_count() + 1 > field.counts()[l]) continue;
            const double u = field.param(l, worst[l]);
            const std::size_t j = knots[l].find_span(u);
            const auto t = knots[l].knots();
            knots[l] = knots[l].with_knot(0.5 * (t[j] + t[j + 1]));
            inserted = true;
        }
        if (!inserted) break;

        FitResult next;
        try {
            next = fit_with_knots(field, std::move(knots));
        } catch (const FitError&) {
            break;
        }
        ++rounds;
        rms_history.push_back(next.report.rms);
        max_history.push_back(next.report.max_error);
        best = std::move(next);
    }

    best.report.rounds = rounds;
    best.report.rms_history = std::move(rms_history);
    best.report.max_error_history = std::move(max_history);
    return best;
}

}  // namespace cpe
