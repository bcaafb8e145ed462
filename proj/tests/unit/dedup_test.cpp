#include "cpe/dedup.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>
#include <unordered_set>

namespace {

std::vector<std::size_t> brute_force(const std::vector<double>& coords, std::size_t dim, double tau) {
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < coords.size() / dim; ++i) {
        bool dup = false;
        for (std::size_t k : kept) {
            double s = 0.0;
            for (std::size_t l = 0; l < dim; ++l) s += std::pow(coords[i * dim + l] - coords[k * dim + l], 2);
            if (std::sqrt(s) < tau) {
                dup = true;
                break;
            }
        }
        if (!dup) kept.push_back(i);
    }
    return kept;
}

TEST(Dedup, SmallExamples) {
    const double tau = 0.01;
    EXPECT_EQ(cpe::dedup_indices(std::vector<double>{0.5, 0.5, 0.505, 0.5}, 2, tau), (std::vector<std::size_t>{0}));
    EXPECT_EQ(cpe::dedup_indices(std::vector<double>{0.5, 0.5, 0.515, 0.5}, 2, tau),
              (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(cpe::dedup_indices(std::vector<double>{}, 2, tau), (std::vector<std::size_t>{}));
    // First seen wins, even when a later point would sit more centrally.
    EXPECT_EQ(cpe::dedup_indices(std::vector<double>{0.0, 0.009, 0.018}, 1, tau),
              (std::vector<std::size_t>{0, 2}));
}

TEST(Dedup, MatchesBruteForceOnClusteredPoints) {
    std::mt19937 rng(12);
    for (std::size_t dim : {1u, 2u, 3u}) {
        std::uniform_real_distribution<double> centre(0.0, 1.0);
        std::normal_distribution<double> jitter(0.0, 0.004);
        std::vector<double> coords;
        for (int c = 0; c < 150; ++c) {
            std::vector<double> base(dim);
            for (auto& b : base) b = centre(rng);
            const int copies = 1 + c % 5;
            for (int k = 0; k < copies; ++k) {
                for (std::size_t l = 0; l < dim; ++l) coords.push_back(base[l] + jitter(rng));
            }
        }
        for (double tau : {0.001, 0.005, 0.02}) {
            EXPECT_EQ(cpe::dedup_indices(coords, dim, tau), brute_force(coords, dim, tau)) << dim << " " << tau;
        }
    }
}

TEST(Dedup, SurvivorsAreSeparatedAndResultIsIdempotent) {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(0.0, 0.1);
    std::vector<double> coords(2 * 2000);
    for (auto& c : coords) c = u(rng);
    const double tau = 0.003;
    const auto keep = cpe::dedup_indices(coords, 2, tau);
    std::vector<double> survivors;
    for (auto i : keep) {
        survivors.push_back(coords[2 * i]);
        survivors.push_back(coords[2 * i + 1]);
    }
    for (std::size_t a = 0; a < keep.size(); ++a) {
        for (std::size_t b = 0; b < a; ++b) {
            EXPECT_GE(std::hypot(survivors[2 * a] - survivors[2 * b], survivors[2 * a + 1] - survivors[2 * b + 1]),
                      tau);
        }
    }
    const auto again = cpe::dedup_indices(survivors, 2, tau);
    ASSERT_EQ(again.size(), keep.size());
    for (std::size_t i = 0; i < again.size(); ++i) EXPECT_EQ(again[i], i);
}

TEST(Dedup, ClosePairsShareACandidateBucket) {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> pos(-5.0, 5.0);
    std::uniform_real_distribution<double> dir(-1.0, 1.0);
    const double tau = 0.01;
    for (int trial = 0; trial < 100000; ++trial) {
        const std::size_t dim = 1 + trial % 3;
        std::vector<double> a(dim), b(dim), v(dim);
        double n = 0.0;
        for (std::size_t l = 0; l < dim; ++l) {
            v[l] = dir(rng);
            n += v[l] * v[l];
        }
        const double r = 0.999 * tau * std::uniform_real_distribution<double>(0.0, 1.0)(rng) / std::sqrt(n);
        for (std::size_t l = 0; l < dim; ++l) {
            a[l] = pos(rng);
            b[l] = a[l] + r * v[l];
        }
        const auto ca = cpe::candidate_indices(a, tau);
        const auto cb = cpe::candidate_indices(b, tau);
        EXPECT_LE(ca.size(), std::size_t{1} << dim);
        const std::set<cpe::HashGridIndex> sa(ca.begin(), ca.end());
        bool shared = false;
        for (const auto& k : cb) shared = shared || sa.count(k) > 0;
        ASSERT_TRUE(shared) << "trial " << trial;
    }
}

TEST(Dedup, CandidateIndicesOnLatticePoint) {
    // x / (20 tau) integral on every axis collapses floor and ceiling to one index.
    const double x[2] = {0.2, 0.4};
    const auto c = cpe::candidate_indices(x, 0.01);
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(c[0], (cpe::HashGridIndex{1, 2}));
    const double y[2] = {0.21, 0.4};
    EXPECT_EQ(cpe::candidate_indices(y, 0.01).size(), 2u);
}

TEST(Dedup, BucketKeysRarelyCollide) {
    std::unordered_set<std::uint64_t> keys;
    std::size_t n = 0;
    for (std::int64_t i = -50; i < 50; ++i) {
        for (std::int64_t j = -50; j < 50; ++j) {
            for (std::int64_t k = 0; k < 10; ++k) {
                const std::int64_t idx[3] = {i, j, k};
                keys.insert(cpe::bucket_key(idx));
                ++n;
            }
        }
    }
    EXPECT_EQ(keys.size(), n);
    const std::int64_t a[2] = {1, 2};
    const std::int64_t b[2] = {2, 1};
    EXPECT_NE(cpe::bucket_key(a), cpe::bucket_key(b));
}

TEST(Dedup, CriticalPointOverloadKeepsFirstSeen) {
    std::vector<cpe::CriticalPoint> pts(3);
    pts[0].location = {0.5, 0.5};
    pts[0].value = 1;
    pts[1].location = {0.50001, 0.5};
    pts[1].value = 2;
    pts[2].location = {0.7, 0.5};
    pts[2].value = 3;
    const auto out = cpe::dedup(pts, 1e-3);
    ASSERT_EQ(out.size(), 2u);
    EXPECT_EQ(out[0].value, 1);
    EXPECT_EQ(out[1].value, 3);
}

TEST(Dedup, RejectsBadArguments) {
    EXPECT_THROW(cpe::dedup_indices(std::vector<double>{0.0, 1.0}, 2, 0.0), std::invalid_argument);
    EXPECT_THROW(cpe::dedup_indices(std::vector<double>{0.0, 1.0, 2.0}, 2, 0.1), std::invalid_argument);
}

}  // namespace
