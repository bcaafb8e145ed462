#include "cpe/synthetic.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace {

// d/dx of x sin(sqrt|x|), written out by hand.
double profile_slope(double x) {
    const double s = std::sqrt(std::abs(x));
    return std::sin(s) + 0.5 * s * std::cos(s);
}

TEST(Schwefel, DirectFormula) {
    const double x[1] = {420.9687};
    EXPECT_NEAR(cpe::schwefel(x), 0.5 * (418.9829 - 420.9687 * std::sin(std::sqrt(420.9687))), 1e-12);
    EXPECT_NEAR(cpe::schwefel(x), 0.0, 1e-4);  // near the global minimum of the unscaled function
    const double origin[2] = {0.0, 0.0};
    EXPECT_DOUBLE_EQ(cpe::schwefel(origin), 418.9829);
}

TEST(Schwefel, OneDimensionalRootCensus) {
    // Slope roots on (0, 2400]; the profile is odd so the negative side mirrors them.
    const auto roots = oracle::roots_1d(profile_slope, 1e-9, 2400.0, 2000000);
    ASSERT_EQ(roots.size(), 16u);
    EXPECT_NEAR(roots.front(), 5.24, 0.01);
    EXPECT_NEAR(roots.back(), 2375.17, 0.01);
    // The first root falls inside the raster cell that straddles the origin at 200 samples.
    const double cell = 4800.0 / 199.0;
    std::size_t outside = 0;
    for (double r : roots) outside += r > 0.5 * cell ? 1 : 0;
    EXPECT_EQ(outside, 15u);
    EXPECT_EQ(2 * outside * 2 * outside, 900u);

    // Types along one axis. The slope is even, so a root rising through zero at +r falls through
    // zero at -r. The field is a sum of per-axis profiles: a 2-D point is a minimum when both
    // axes are, a maximum when neither is, and a saddle otherwise.
    std::size_t rising = 0;
    std::size_t falling = 0;
    for (double r : roots) {
        if (r <= 0.5 * cell) continue;
        const bool rises = profile_slope(r - 1e-3) < 0.0 && profile_slope(r + 1e-3) > 0.0;
        const bool mirror_rises = profile_slope(-r - 1e-3) < 0.0 && profile_slope(-r + 1e-3) > 0.0;
        EXPECT_NE(rises, mirror_rises);
        rising += (rises ? 1 : 0) + (mirror_rises ? 1 : 0);
        falling += (rises ? 0 : 1) + (mirror_rises ? 0 : 1);
    }
    EXPECT_EQ(rising * rising, 225u);
    EXPECT_EQ(falling * falling, 225u);
    EXPECT_EQ(2 * rising * falling, 450u);
}

TEST(Schwefel, CensusFormula) {
    cpe::SchwefelSpec spec;
    spec.k = 16;
    EXPECT_EQ(spec.expected_critical_points(), 900u);
    EXPECT_EQ(spec.expected_minima(), 225u);
    EXPECT_EQ(spec.expected_maxima(), 225u);
    EXPECT_EQ(spec.expected_saddles(), 450u);
    spec.k = 15;
    EXPECT_EQ(spec.expected_critical_points(), 784u);
    const auto [lo, hi] = spec.bounds();
    EXPECT_NEAR(hi, std::pow(15.5 * M_PI, 2), 1e-9);
    EXPECT_EQ(lo, -hi);
}

TEST(Schwefel, GeneratedValuesAreBitEqual) {
    cpe::SchwefelSpec spec;
    spec.domain = std::pair{-2400.0, 2400.0};
    spec.samples = 50;
    const auto f = cpe::generate_field(spec);
    ASSERT_EQ(f.size(), 2500u);
    for (std::size_t flat = 0; flat < f.size(); ++flat) {
        const auto idx = f.unflatten(flat);
        const double x[2] = {f.coordinate(0, idx[0]), f.coordinate(1, idx[1])};
        EXPECT_EQ(f.values()[flat], cpe::schwefel(x));
        // Symmetric under swapping the axes.
        const std::size_t swapped[2] = {idx[1], idx[0]};
        EXPECT_EQ(f.values()[flat], f.at(swapped));
    }
}

TEST(Schwefel, TwoByTwoCorners) {
    cpe::SchwefelSpec spec;
    spec.domain = std::pair{-100.0, 300.0};
    spec.samples = 2;
    const auto f = cpe::generate_field(spec);
    const double c[4][2] = {{-100, -100}, {-100, 300}, {300, -100}, {300, 300}};
    for (int i = 0; i < 4; ++i) EXPECT_EQ(f.values()[i], cpe::schwefel(c[i]));
}

TEST(AnalyticFields, KnownValues) {
    const double o[2] = {0.0, 0.0};
    const double p[2] = {0.5, -1.0};
    EXPECT_DOUBLE_EQ(cpe::analytic_field(cpe::FieldKind::bump, o), 1.0);
    EXPECT_DOUBLE_EQ(cpe::analytic_field(cpe::FieldKind::bowl, p), 1.25);
    EXPECT_DOUBLE_EQ(cpe::analytic_field(cpe::FieldKind::saddle, p), 0.25 - 1.0);
    EXPECT_DOUBLE_EQ(cpe::analytic_field(cpe::FieldKind::ramp, p), 0.5 - 2.0);
    EXPECT_DOUBLE_EQ(cpe::analytic_field(cpe::FieldKind::constant, p), 1.0);
    EXPECT_EQ(cpe::parse_field_kind("const"), cpe::FieldKind::constant);
    EXPECT_FALSE(cpe::parse_field_kind("banana"));
}

TEST(AnalyticFields, RasterShape) {
    const auto f = cpe::generate_field(cpe::FieldKind::bowl, 3, 5, -2.0, 2.0);
    EXPECT_EQ(f.size(), 125u);
    EXPECT_DOUBLE_EQ(f.coordinate(2, 4), 2.0);
    EXPECT_THROW(cpe::generate_field(cpe::FieldKind::bowl, 2, 1), std::invalid_argument);
}

}  // namespace
