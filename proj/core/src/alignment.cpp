#include "cpe/alignment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

namespace cpe {

double scaled_distance(std::span<const double> a, std::span<const double> b, std::span<const double> scale) {
    double s = 0.0;
    for (std::size_t l = 0; l < a.size(); ++l) {
        const double diff = (a[l] - b[l]) / (scale.empty() ? 1.0 : scale[l]);
        s += diff * diff;
    }
    return std::sqrt(s);
}

namespace {

std::uint64_t cell_key(std::span<const std::int64_t> cell) {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto c : cell) {
        h ^= static_cast<std::uint64_t>(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

}  // namespace

AlignmentReport align(std::span<const AlignablePoint> a, std::span<const AlignablePoint> b, double threshold,
                      std::span<const double> scale) {
    if (!(threshold > 0.0)) throw std::invalid_argument("align: threshold must be positive");
    AlignmentReport report;
    report.size_a = a.size();
    report.size_b = b.size();
    report.threshold = threshold;

    if (!a.empty() && !b.empty()) {
        const std::size_t d = a.front().physical.size();
        if (!scale.empty() && scale.size() != d) throw std::invalid_argument("align: one scale per axis");
        const auto cell_of = [&](const std::vector<double>& x) {
            std::vector<std::int64_t> c(d);
            for (std::size_t l = 0; l < d; ++l) {
                c[l] = static_cast<std::int64_t>(std::floor(x[l] / (scale.empty() ? 1.0 : scale[l]) / threshold));
            }
            return c;
        };

        // Bucket B on a lattice of side `threshold`; candidates for a lie in the 3^d cells around it.
        std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets;
        for (std::size_t j = 0; j < b.size(); ++j) buckets[cell_key(cell_of(b[j].physical))].push_back(j);

        std::vector<std::tuple<double, std::size_t, std::size_t>> candidates;
        std::vector<std::int64_t> probe(d);
        for (std::size_t i = 0; i < a.size(); ++i) {
            const auto base = cell_of(a[i].physical);
            std::size_t combos = 1;
            for (std::size_t l = 0; l < d; ++l) combos *= 3;
            for (std::size_t c = 0; c < combos; ++c) {
                std::size_t rem = c;
                for (std::size_t l = 0; l < d; ++l) {
                    probe[l] = base[l] + static_cast<std::int64_t>(rem % 3) - 1;
                    rem /= 3;
                }
                const auto it = buckets.find(cell_key(probe));
                if (it == buckets.end()) continue;
                for (std::size_t j : it->second) {
                    if (cell_of(b[j].physical) != probe) continue;
                    const double dist = scaled_distance(a[i].physical, b[j].physical, scale);
                    if (dist < threshold) candidates.emplace_back(dist, i, j);
                }
            }
        }
        std::sort(candidates.begin(), candidates.end());

        std::vector<char> used_a(a.size(), 0), used_b(b.size(), 0);
        for (const auto& [dist, i, j] : candidates) {
            if (used_a[i] || used_b[j]) continue;
            used_a[i] = used_b[j] = 1;
            report.pairs.emplace_back(i, j);
            if (a[i].type == b[j].type && a[i].index == b[j].index) ++report.aligned_same_type;
        }
        report.aligned = report.pairs.size();
    }

    const std::size_t denom = report.size_a + report.size_b - report.aligned;
    report.jaccard = denom == 0 ? 1.0 : static_cast<double>(report.aligned) / static_cast<double>(denom);
    return report;
}

}  // namespace cpe
