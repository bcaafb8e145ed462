#include "cpe/derivatives.hpp"
#include "cpe/fit.hpp"
#include "cpe/span_filter.hpp"
#include "cpe/synthetic.hpp"

#include <gtest/gtest.h>

#include <random>

namespace {

using cpe::KnotVector;
using cpe::TensorSplineModel;

TensorSplineModel fitted(cpe::FieldKind kind, std::size_t samples, std::size_t controls) {
    const auto field = cpe::generate_field(kind, 2, samples);
    const std::size_t n[2] = {controls, controls};
    return cpe::fit_fixed(field, 3, n).model;
}

TEST(SpanFilter, RampSkipsEverySpan) {
    const auto model = fitted(cpe::FieldKind::ramp, 30, 10);
    const cpe::DerivativeSet derivs(model);
    const auto r = cpe::filter_spans(model, derivs, 1);
    EXPECT_EQ(r.total, model.span_count());
    EXPECT_TRUE(r.retained.empty());
    EXPECT_EQ(r.skipped, r.total);
    EXPECT_EQ(r.eliminated_by_axis[0], r.total);  // x-derivative is positive everywhere
}

TEST(SpanFilter, ConstantKeepsEverySpan) {
    // Zero derivative controls touch zero, so nothing can be excluded.
    const auto model = fitted(cpe::FieldKind::constant, 20, 6);
    const cpe::DerivativeSet derivs(model);
    const auto r = cpe::filter_spans(model, derivs, 1);
    EXPECT_EQ(r.retained.size(), r.total);
}

TEST(SpanFilter, ZeroControlKeepsSpan) {
    // d/du of a 1-D spline whose derivative controls are (1, 0, 2): the middle window touches 0.
    const auto kv = KnotVector::clamped_uniform(2, 4);
    const TensorSplineModel deriv({kv.derivative()}, {1.0, 0.0, 2.0});
    const TensorSplineModel model({kv}, {0.0, 0.0, 0.0, 0.0});
    const auto spans = model.spans();
    ASSERT_EQ(spans.size(), 2u);
    EXPECT_FALSE(cpe::excludes_zero(deriv, 0, spans[0]));
    EXPECT_FALSE(cpe::excludes_zero(deriv, 0, spans[1]));
    const TensorSplineModel positive({kv.derivative()}, {1.0, 1e-300, 2.0});
    EXPECT_TRUE(cpe::excludes_zero(positive, 0, spans[0]));
}

TEST(SpanFilter, BumpRetainsOnlyTheCentre) {
    const auto model = fitted(cpe::FieldKind::bump, 41, 12);
    const cpe::DerivativeSet derivs(model);
    const auto r = cpe::filter_spans(model, derivs, 1);
    EXPECT_GT(r.skipped, 0u);
    EXPECT_EQ(r.retained.size() + r.skipped, r.total);
    // The maximum sits at parameter (0.5, 0.5); its span must be retained.
    const auto spans = model.spans();
    bool found = false;
    for (std::size_t s : r.retained) {
        const auto& sp = spans[s];
        if (sp.lo[0] <= 0.5 && 0.5 <= sp.hi[0] && sp.lo[1] <= 0.5 && 0.5 <= sp.hi[1]) found = true;
    }
    EXPECT_TRUE(found);
}

TEST(SpanFilter, SkippedSpansHaveOneSignedDerivative) {
    // Soundness: on every skipped span the eliminating derivative never vanishes, checked on a
    // dense sample lattice inside the span.
    const auto field = cpe::generate_field(cpe::SchwefelSpec{.dim = 2, .k = 6, .domain = {}, .samples = 60});
    const std::size_t n[2] = {30, 30};
    const auto model = cpe::fit_fixed(field, 3, n).model;
    const cpe::DerivativeSet derivs(model);
    const auto r = cpe::filter_spans(model, derivs, 1);
    ASSERT_GT(r.skipped, 0u);
    ASSERT_GT(r.retained.size(), 0u);

    const auto spans = model.spans();
    std::vector<char> kept(spans.size(), 0);
    for (auto s : r.retained) kept[s] = 1;
    for (std::size_t s = 0; s < spans.size(); ++s) {
        if (kept[s]) continue;
        const auto& sp = spans[s];
        int axis = -1;
        for (int l = 0; l < 2 && axis < 0; ++l) {
            if (cpe::excludes_zero(derivs.first(l), l, sp)) axis = l;
        }
        ASSERT_GE(axis, 0);
        int sign = 0;
        for (int a = 0; a <= 20; ++a) {
            for (int b = 0; b <= 20; ++b) {
                const double u[2] = {sp.lo[0] + (sp.hi[0] - sp.lo[0]) * a / 20.0,
                                     sp.lo[1] + (sp.hi[1] - sp.lo[1]) * b / 20.0};
                const double g = derivs.first(axis).evaluate(u);
                ASSERT_NE(g, 0.0);
                const int sg = g > 0 ? 1 : -1;
                if (sign == 0) sign = sg;
                ASSERT_EQ(sg, sign);
            }
        }
    }
}

TEST(SpanFilter, ThreadCountDoesNotChangeResult) {
    const auto model = fitted(cpe::FieldKind::bump, 60, 25);
    const cpe::DerivativeSet derivs(model);
    const auto a = cpe::filter_spans(model, derivs, 1);
    const auto b = cpe::filter_spans(model, derivs, 4);
    EXPECT_EQ(a.retained, b.retained);
    EXPECT_EQ(a.eliminated_by_axis, b.eliminated_by_axis);
}

TEST(SpanFilter, DerivativeListOverloadAgrees) {
    const auto model = fitted(cpe::FieldKind::saddle, 40, 14);
    const std::vector<TensorSplineModel> first{model.derivative(0), model.derivative(1)};
    const auto a = cpe::filter_spans(model, first, 1);
    const auto b = cpe::filter_spans(model, cpe::DerivativeSet(model), 1);
    EXPECT_EQ(a.retained, b.retained);
    EXPECT_THROW(cpe::filter_spans(model, std::span<const TensorSplineModel>(first.data(), 1), 1),
                 std::invalid_argument);
}

}  // namespace
