#include "cpe/derivatives.hpp"
#include "cpe/error.hpp"
#include "cpe/knot_vector.hpp"
#include "cpe/tensor_spline.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

namespace {

using cpe::KnotVector;
using cpe::TensorSplineModel;

std::vector<double> random_controls(std::size_t n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> c(n);
    for (auto& v : c) v = dist(rng);
    return c;
}

TensorSplineModel random_model(std::vector<std::size_t> n, std::vector<int> p, unsigned seed) {
    std::vector<KnotVector> axes;
    std::size_t total = 1;
    for (std::size_t l = 0; l < n.size(); ++l) {
        axes.push_back(KnotVector::clamped_uniform(p[l], n[l]));
        total *= n[l];
    }
    return TensorSplineModel(std::move(axes), random_controls(total, seed));
}

TEST(KnotVector, ClampedUniformLayout) {
    const auto kv = KnotVector::clamped_uniform(3, 7);
    const std::vector<double> expected{0, 0, 0, 0, 0.25, 0.5, 0.75, 1, 1, 1, 1};
    ASSERT_EQ(kv.knots().size(), expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_DOUBLE_EQ(kv.knots()[i], expected[i]);
    EXPECT_EQ(kv.control_count(), 7u);
    EXPECT_EQ(kv.span_indices(), (std::vector<std::size_t>{3, 4, 5, 6}));
}

TEST(KnotVector, RejectsBadVectors) {
    EXPECT_THROW(KnotVector(2, {0, 0, 0.5, 1, 1, 1}), std::invalid_argument);
    EXPECT_THROW(KnotVector(1, {0, 0, 0.7, 0.3, 1, 1}), std::invalid_argument);
    EXPECT_THROW(KnotVector(1, {0, 1}), std::invalid_argument);
    EXPECT_THROW(KnotVector::clamped_uniform(3, 3), std::invalid_argument);
}

TEST(KnotVector, FindSpanConvention) {
    const auto kv = KnotVector::clamped_uniform(2, 6);  // interior knots 1/4, 1/2, 3/4
    EXPECT_EQ(kv.find_span(0.0), 2u);
    EXPECT_EQ(kv.find_span(0.24), 2u);
    EXPECT_EQ(kv.find_span(0.25), 3u);
    EXPECT_EQ(kv.find_span(0.5), 4u);
    EXPECT_EQ(kv.find_span(1.0), 5u);
    EXPECT_THROW(kv.find_span(-1e-12), cpe::DomainError);
    EXPECT_THROW(kv.find_span(1.0 + 1e-12), cpe::DomainError);
}

TEST(KnotVector, BasisMatchesRecursionAndSumsToOne) {
    for (int p = 1; p <= 5; ++p) {
        const auto kv = KnotVector::clamped_uniform(p, p + 6);
        std::vector<double> out(p + 1);
        for (int s = 0; s <= 400; ++s) {
            const double u = s / 400.0;
            const std::size_t j = kv.find_span(u);
            kv.basis(u, j, out);
            EXPECT_NEAR(std::accumulate(out.begin(), out.end(), 0.0), 1.0, 1e-14);
            for (int r = 0; r <= p; ++r) {
                EXPECT_GE(out[r], -1e-15);
                EXPECT_NEAR(out[r], oracle::basis(kv.knots(), j - p + r, p, u), 1e-13) << "p=" << p << " u=" << u;
            }
        }
    }
}

TEST(KnotVector, BasisWithRepeatedInteriorKnots) {
    const KnotVector kv(3, {0, 0, 0, 0, 0.3, 0.3, 0.6, 1, 1, 1, 1});
    std::vector<double> out(4);
    for (int s = 0; s <= 200; ++s) {
        const double u = s / 200.0;
        const std::size_t j = kv.find_span(u);
        kv.basis(u, j, out);
        for (int r = 0; r <= 3; ++r) EXPECT_NEAR(out[r], oracle::basis(kv.knots(), j - 3 + r, 3, u), 1e-13);
    }
    EXPECT_EQ(kv.span_indices().size(), 3u);
}

TEST(TensorSpline, EvaluateMatchesFullSum) {
    const auto model = random_model({7, 5, 6}, {3, 2, 4}, 7);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<double> u{dist(rng), dist(rng), dist(rng)};
        if (trial % 50 == 0) u = {1.0, 0.0, 1.0};
        EXPECT_NEAR(model.evaluate(u), oracle::full_sum(model, u), 1e-12);
    }
}

TEST(TensorSpline, ConstantControlsReproduceConstant) {
    std::vector<KnotVector> axes{KnotVector::clamped_uniform(3, 9), KnotVector::clamped_uniform(2, 4)};
    const TensorSplineModel model(axes, std::vector<double>(36, 2.5));
    for (double a : {0.0, 0.13, 0.5, 0.99, 1.0}) {
        for (double b : {0.0, 0.41, 1.0}) {
            const double u[2] = {a, b};
            EXPECT_NEAR(model.evaluate(u), 2.5, 1e-14);
        }
    }
}

TEST(TensorSpline, DomainErrorOutsideUnitCube) {
    const auto model = random_model({4, 4}, {3, 3}, 1);
    const double bad[2] = {0.5, 1.5};
    EXPECT_THROW(model.evaluate(bad), cpe::DomainError);
}

TEST(TensorSpline, ConstructionValidatesControlCount) {
    std::vector<KnotVector> axes{KnotVector::clamped_uniform(2, 4), KnotVector::clamped_uniform(2, 5)};
    EXPECT_THROW(TensorSplineModel(axes, std::vector<double>(19)), std::invalid_argument);
    EXPECT_NO_THROW(TensorSplineModel(axes, std::vector<double>(20)));
}

TEST(TensorSpline, SpansAreLexicographicWithLastAxisFastest) {
    const auto model = random_model({5, 6}, {3, 2}, 2);
    const auto spans = model.spans();
    ASSERT_EQ(spans.size(), 2u * 4u);
    EXPECT_EQ(model.span_count(), spans.size());
    EXPECT_EQ(spans[0].knot_index, (std::vector<std::size_t>{3, 2}));
    EXPECT_EQ(spans[1].knot_index, (std::vector<std::size_t>{3, 3}));
    EXPECT_EQ(spans[4].knot_index, (std::vector<std::size_t>{4, 2}));
    EXPECT_EQ(spans[1].first_control, (std::vector<std::size_t>{0, 1}));
    EXPECT_DOUBLE_EQ(spans[1].lo[1], 0.25);
    EXPECT_DOUBLE_EQ(spans[1].hi[1], 0.5);
}

TEST(TensorSpline, DoubledKnotSpanCount) {
    // A repeated interior knot adds no span: zero-width intervals are skipped.
    std::vector<KnotVector> axes{KnotVector(2, {0, 0, 0, 0.5, 0.5, 1, 1, 1}), KnotVector::clamped_uniform(2, 4)};
    const TensorSplineModel model(axes, std::vector<double>(5 * 4, 0.0));
    EXPECT_EQ(model.span_count(), 2u * 2u);
}

TEST(TensorSpline, PhysicalParamRoundTrip) {
    std::vector<KnotVector> axes{KnotVector::clamped_uniform(2, 4), KnotVector::clamped_uniform(2, 4)};
    const TensorSplineModel model(axes, std::vector<double>(16), {{-3.0, 5.0}, {10.0, 12.0}});
    const double x[2] = {1.0, 11.5};
    const auto u = model.to_param(x);
    EXPECT_DOUBLE_EQ(u[0], 0.5);
    EXPECT_DOUBLE_EQ(u[1], 0.75);
    const auto back = model.to_physical(u);
    EXPECT_DOUBLE_EQ(back[0], 1.0);
    EXPECT_DOUBLE_EQ(back[1], 11.5);
}

TEST(Derivatives, FirstDerivativeMatchesFiniteDifferences) {
    const auto model = random_model({8, 7}, {3, 3}, 11);
    const auto f = [&](std::span<const double> u) { return model.evaluate(u); };
    const cpe::DerivativeSet derivs(model);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> dist(0.02, 0.98);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> u{dist(rng), dist(rng)};
        const auto g = cpe::gradient(derivs, u);
        for (std::size_t l = 0; l < 2; ++l) {
            const double fd = oracle::central_difference(f, u, l, 1e-6);
            EXPECT_NEAR(g[l], fd, 1e-5 * (1.0 + std::abs(fd)));
        }
    }
}

TEST(Derivatives, DerivativeModelEvaluatesToExactDerivative) {
    // Differentiating a degree-p spline is exact, so the derivative model agrees with a
    // high-order finite difference of the original to near round-off.
    const auto model = random_model({9}, {4}, 13);
    const auto dm = model.derivative(0);
    EXPECT_EQ(dm.axis(0).degree(), 3);
    EXPECT_EQ(dm.axis(0).control_count(), 8u);
    for (int s = 1; s < 100; ++s) {
        const double u = s / 100.0;
        const double h = 1e-4;
        auto ev = [&](double x) { const double a[1] = {x}; return model.evaluate(a); };
        const double fd = (-ev(u + 2 * h) + 8 * ev(u + h) - 8 * ev(u - h) + ev(u - 2 * h)) / (12 * h);
        const double a[1] = {u};
        EXPECT_NEAR(dm.evaluate(a), fd, 1e-6 * (1.0 + std::abs(fd)));
    }
}

TEST(Derivatives, MixedPartialsAgreeAndHessianIsSymmetric) {
    const auto model = random_model({6, 7, 5}, {3, 2, 3}, 17);
    const cpe::DerivativeSet derivs(model);
    const auto dxy = model.derivative(0).derivative(1);
    const auto dyx = model.derivative(1).derivative(0);
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> u{dist(rng), dist(rng), dist(rng)};
        EXPECT_NEAR(dxy.evaluate(u), dyx.evaluate(u), 1e-9);
        const auto gh = cpe::gradient_and_hessian(derivs, u);
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) EXPECT_EQ(gh.hessian(i, j), gh.hessian(j, i));
        }
        EXPECT_NEAR(gh.hessian(0, 1), dxy.evaluate(u), 1e-9);
    }
}

TEST(Derivatives, QuadraticIsReproducedExactly) {
    // x^2 + y^2 on [0,1]^2 in Bernstein form on a single span: controls (0, 0, 1) per axis for x^2.
    std::vector<KnotVector> axes{KnotVector::clamped_uniform(2, 3), KnotVector::clamped_uniform(2, 3)};
    const double sq[3] = {0.0, 0.0, 1.0};
    std::vector<double> controls(9);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) controls[i * 3 + j] = sq[i] + sq[j];
    }
    const TensorSplineModel model(axes, controls);
    const cpe::DerivativeSet derivs(model);
    for (double a : {0.0, 0.3, 0.77, 1.0}) {
        for (double b : {0.0, 0.5, 1.0}) {
            const double u[2] = {a, b};
            EXPECT_NEAR(model.evaluate(u), a * a + b * b, 1e-14);
            const auto gh = cpe::gradient_and_hessian(derivs, u);
            EXPECT_NEAR(gh.gradient[0], 2 * a, 1e-13);
            EXPECT_NEAR(gh.gradient[1], 2 * b, 1e-13);
            EXPECT_NEAR(gh.hessian(0, 0), 2.0, 1e-13);
            EXPECT_NEAR(gh.hessian(1, 1), 2.0, 1e-13);
            EXPECT_NEAR(gh.hessian(0, 1), 0.0, 1e-13);
        }
    }
}

TEST(Derivatives, RepeatedKnotGivesFiniteDerivative) {
    // Full multiplicity interior knot: the derivative formula hits 0/0 and must yield 0, not NaN.
    const KnotVector kv(2, {0, 0, 0, 0.5, 0.5, 0.5, 1, 1, 1});
    const TensorSplineModel model({kv}, {0.0, 1.0, 2.0, 5.0, 4.0, 3.0});
    const auto dm = model.derivative(0);
    for (double c : dm.controls()) EXPECT_TRUE(std::isfinite(c));
    for (int s = 0; s <= 50; ++s) {
        const double u[1] = {s / 50.0};
        EXPECT_TRUE(std::isfinite(dm.evaluate(u)));
    }
}

TEST(Derivatives, RequiresDegreeTwo) {
    const auto model = random_model({4, 4}, {1, 3}, 3);
    EXPECT_THROW(cpe::DerivativeSet{model}, std::invalid_argument);
}

}  // namespace
