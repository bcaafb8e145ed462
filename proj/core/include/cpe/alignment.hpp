#pragma once

#include "cpe/critical_point.hpp"

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace cpe {

struct AlignablePoint {
    std::vector<double> physical;
    int index = 0;
    MorseType type = MorseType::minimum;
};

struct AlignmentReport {
    std::size_t size_a = 0;
    std::size_t size_b = 0;
    std::size_t aligned = 0;
    std::size_t aligned_same_type = 0;
    double jaccard = 0.0;
    double threshold = 0.0;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (index in A, index in B)
};

/// Scaled distance sqrt(sum(((a_l - b_l) / scale_l)^2)); empty scale means unit scaling.
double scaled_distance(std::span<const double> a, std::span<const double> b, std::span<const double> scale);

/// One-to-one greedy matching: repeatedly pair the globally closest unmatched (a, b) whose scaled
/// distance is strictly below `threshold`. Jaccard = aligned / (|A| + |B| - aligned), and 1 when
/// both sets are empty.
AlignmentReport align(std::span<const AlignablePoint> a, std::span<const AlignablePoint> b, double threshold,
                      std::span<const double> scale = {});

}  // namespace cpe
