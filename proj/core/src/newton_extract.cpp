#include "cpe/newton_extract.hpp"

#include "cpe/dedup.hpp"
#include "cpe/error.hpp"
#include "cpe/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace cpe {

double default_tau(const TensorSplineModel& model) {
    const auto& samples = model.source_samples();
    if (samples.empty()) return 1e-4;
    double cell = 1.0;
    for (auto m : samples) cell = std::min(cell, 1.0 / static_cast<double>(m - 1));
    return 0.999 * cell;
}

Classification classify(const Eigen::MatrixXd& hessian, double delta) {
    const double det = hessian.determinant();
    if (!(std::abs(det) >= delta) || det == 0.0) {
        throw ClassificationError("degenerate Hessian (|det| = " + std::to_string(std::abs(det)) + ")");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(hessian, Eigen::EigenvaluesOnly);
    int negative = 0;
    for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
        const double ev = eig.eigenvalues()[i];
        if (ev == 0.0) throw ClassificationError("zero Hessian eigenvalue");
        if (ev < 0.0) ++negative;
    }
    return {negative, morse_type(negative, static_cast<std::size_t>(hessian.rows()))};
}

namespace {

bool inside_span(const KnotSpan& span, std::span<const double> x) {
    for (std::size_t l = 0; l < span.dim(); ++l) {
        if (x[l] < span.lo[l]) return false;
        if (span.hi[l] == 1.0 ? x[l] > span.hi[l] : x[l] >= span.hi[l]) return false;
    }
    return true;
}

bool on_or_outside_domain_boundary(std::span<const double> x) {
    return std::any_of(x.begin(), x.end(), [](double v) { return !(v > 0.0 && v < 1.0); });
}

bool inside_domain(std::span<const double> x) {
    return std::all_of(x.begin(), x.end(), [](double v) { return v >= 0.0 && v <= 1.0; });
}

double distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t l = 0; l < a.size(); ++l) s += (a[l] - b[l]) * (a[l] - b[l]);
    return std::sqrt(s);
}

}  // namespace

SpanExtraction extract_in_span(const KnotSpan& span, const TensorSplineModel& model, const DerivativeSet& derivs,
                               const NewtonConfig& cfg, double tau) {
    const std::size_t d = span.dim();
    const std::vector<double> center = span.center();
    const double xi = cfg.xi_factor * span.diagonal();

    std::vector<std::size_t> per_axis(d);
    for (std::size_t l = 0; l < d; ++l) {
        per_axis[l] = cfg.init_per_axis > 0 ? cfg.init_per_axis
                                            : static_cast<std::size_t>(model.axis(l).degree()) + 1;
    }

    SpanExtraction out;
    std::vector<std::size_t> cell(d, 0);
    std::vector<double> x(d), next(d);
    while (true) {
        for (std::size_t l = 0; l < d; ++l) {
            const double h = (span.hi[l] - span.lo[l]) / static_cast<double>(per_axis[l]);
            x[l] = span.lo[l] + (static_cast<double>(cell[l]) + 0.5) * h;
        }
        ++out.starts;

        GradientHessian gh = gradient_and_hessian(derivs, x);
        bool finished = false;
        for (std::size_t i = 0; i < cfg.max_iter; ++i) {
            Eigen::PartialPivLU<Eigen::MatrixXd> lu(gh.hessian);
            const double det = lu.determinant();
            if (!(std::abs(det) >= cfg.delta)) {
                ++out.singular;
                finished = true;
                break;
            }
            const Eigen::VectorXd step = lu.solve(gh.gradient);
            for (std::size_t l = 0; l < d; ++l) next[l] = x[l] - step[static_cast<Eigen::Index>(l)];
            ++out.iterations;

            if (!std::isfinite(step.sum()) || distance(next, center) > xi || !inside_domain(next)) {
                ++out.escaped;
                finished = true;
                break;
            }
            x.swap(next);
            gh = gradient_and_hessian(derivs, x);
            const double gnorm = gh.gradient.norm();
            if (gnorm < cfg.eps) {
                finished = true;
                const double det_here = gh.hessian.determinant();
                const bool keep =
                    inside_span(span, x) && !on_or_outside_domain_boundary(x) && std::abs(det_here) >= cfg.delta &&
                    std::none_of(out.points.begin(), out.points.end(),
                                 [&](const CriticalPoint& z) { return distance(z.location, x) < tau; });
                if (keep) {
                    Classification cls;
                    try {
                        cls = classify(gh.hessian, cfg.delta);
                    } catch (const ClassificationError&) {
                        break;
                    }
                    CriticalPoint cp;
                    cp.location = x;
                    cp.physical = model.to_physical(x);
                    cp.value = model.evaluate(x);
                    cp.gradient_norm = gnorm;
                    cp.hessian_det = det_here;
                    cp.index = cls.index;
                    cp.type = cls.type;
                    cp.iterations = i + 1;
                    out.points.push_back(std::move(cp));
                }
                break;
            }
        }
        if (!finished) ++out.exhausted;

        std::size_t l = d;
        while (l-- > 0) {
            if (++cell[l] < per_axis[l]) break;
            cell[l] = 0;
        }
        if (l == static_cast<std::size_t>(-1)) break;
    }
    return out;
}

ExtractionResult extract_all(const TensorSplineModel& model, const NewtonConfig& cfg) {
    if (!(cfg.eps > 0.0) || cfg.max_iter < 1 || !(cfg.delta > 0.0) || !(cfg.xi_factor > 0.0)) {
        throw std::invalid_argument("Newton configuration values must be positive");
    }
    using clock = std::chrono::steady_clock;
    const auto seconds = [](clock::time_point a, clock::time_point b) {
        return std::chrono::duration<double>(b - a).count();
    };

    ExtractionResult result;
    auto& stats = result.stats;
    stats.tau = cfg.tau > 0.0 ? cfg.tau : default_tau(model);

    const auto t0 = clock::now();
    const DerivativeSet derivs(model);
    const auto t1 = clock::now();
    result.filtration = filter_spans(model, derivs, cfg.threads);
    const auto spans = model.spans();
    const auto t2 = clock::now();

    const auto& retained = result.filtration.retained;
    std::vector<SpanExtraction> per_span(retained.size());
    parallel_for(retained.size(), cfg.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            per_span[i] = extract_in_span(spans[retained[i]], model, derivs, cfg, stats.tau);
        }
    });
    const auto t3 = clock::now();

    std::vector<CriticalPoint> merged;
    for (auto& s : per_span) {
        stats.starts += s.starts;
        stats.total_iterations += s.iterations;
        stats.exhausted_starts += s.exhausted;
        for (auto& p : s.points) merged.push_back(std::move(p));
    }
    stats.candidates = merged.size();
    std::sort(merged.begin(), merged.end(),
              [](const CriticalPoint& a, const CriticalPoint& b) { return a.location < b.location; });
    result.points = dedup(merged, stats.tau);
    const auto t4 = clock::now();

    stats.spans_total = result.filtration.total;
    stats.spans_processed = retained.size();
    stats.accepted = result.points.size();
    if (!result.points.empty()) {
        double iters = 0.0, grad = 0.0;
        for (const auto& p : result.points) {
            iters += static_cast<double>(p.iterations);
            grad += p.gradient_norm;
        }
        stats.average_iterations = iters / static_cast<double>(result.points.size());
        stats.average_gradient = grad / static_cast<double>(result.points.size());
    }
    stats.seconds = {seconds(t0, t1), seconds(t1, t2), seconds(t2, t3), seconds(t3, t4), seconds(t0, t4)};
    return result;
}

}  // namespace cpe
