#include "cpe/dedup.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace cpe {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Bucket keys of every floor/ceiling combination, hashed without materialising the indices.
// Equivalent to bucket_key over candidate_indices, in the same order.
void candidate_keys(std::span<const double> x, double tau, std::vector<std::uint64_t>& seeds,
                    std::vector<std::uint64_t>& keys) {
    const double cell = 20.0 * tau;
    seeds.assign(1, 0);
    const auto mix = [](std::uint64_t seed, std::int64_t k) {
        return seed ^ (splitmix64(static_cast<std::uint64_t>(k)) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
    };
    for (double v : x) {
        const double k = v / cell;
        const auto lo = static_cast<std::int64_t>(std::floor(k));
        const auto hi = static_cast<std::int64_t>(std::ceil(k));
        const std::size_t n = seeds.size();
        if (hi != lo) {
            for (std::size_t i = 0; i < n; ++i) seeds.push_back(mix(seeds[i], hi));
        }
        for (std::size_t i = 0; i < n; ++i) seeds[i] = mix(seeds[i], lo);
    }
    keys.clear();
    for (std::uint64_t s : seeds) keys.push_back(splitmix64(s));
}

}  // namespace

std::uint64_t bucket_key(std::span<const std::int64_t> index) {
    std::uint64_t seed = 0;
    for (std::int64_t k : index) {
        seed ^= splitmix64(static_cast<std::uint64_t>(k)) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    }
    return splitmix64(seed);
}

std::vector<HashGridIndex> candidate_indices(std::span<const double> x, double tau) {
    const std::size_t d = x.size();
    std::vector<HashGridIndex> out{HashGridIndex{}};
    out.front().reserve(d);
    const double cell = 20.0 * tau;
    for (std::size_t l = 0; l < d; ++l) {
        const double k = x[l] / cell;
        const auto lo = static_cast<std::int64_t>(std::floor(k));
        const auto hi = static_cast<std::int64_t>(std::ceil(k));
        const std::size_t n = out.size();
        if (hi != lo) {
            out.reserve(2 * n);
            for (std::size_t i = 0; i < n; ++i) out.push_back(out[i]);
        }
        for (std::size_t i = 0; i < n; ++i) out[i].push_back(lo);
        if (hi != lo) {
            for (std::size_t i = n; i < 2 * n; ++i) out[i].push_back(hi);
        }
    }
    return out;
}

std::vector<std::size_t> dedup_indices(std::span<const double> coords, std::size_t dim, double tau) {
    if (!(tau > 0.0)) throw std::invalid_argument("dedup: tau must be positive");
    if (dim == 0 || coords.size() % dim != 0) throw std::invalid_argument("dedup: bad coordinate layout");
    const std::size_t n = coords.size() / dim;
    const double tau2 = tau * tau;

    std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets;
    std::vector<std::size_t> survivors;
    std::vector<std::uint64_t> seeds, keys;
    for (std::size_t i = 0; i < n; ++i) {
        const auto x = coords.subspan(i * dim, dim);
        candidate_keys(x, tau, seeds, keys);

        bool duplicate = false;
        for (std::uint64_t key : keys) {
            const auto it = buckets.find(key);
            if (it == buckets.end()) continue;
            for (std::size_t j : it->second) {
                const auto y = coords.subspan(j * dim, dim);
                double dist2 = 0.0;
                for (std::size_t l = 0; l < dim; ++l) dist2 += (x[l] - y[l]) * (x[l] - y[l]);
                if (dist2 < tau2) {
                    duplicate = true;
                    break;
                }
            }
            if (duplicate) break;
        }
        if (duplicate) continue;

        survivors.push_back(i);
        for (std::uint64_t key : keys) {
            auto& bucket = buckets[key];
            if (bucket.empty() || bucket.back() != i) bucket.push_back(i);
        }
    }
    return survivors;
}

std::vector<CriticalPoint> dedup(const std::vector<CriticalPoint>& points, double tau) {
    if (points.empty()) return {};
    const std::size_t d = points.front().location.size();
    std::vector<double> coords;
    coords.reserve(points.size() * d);
    for (const auto& p : points) coords.insert(coords.end(), p.location.begin(), p.location.end());
    std::vector<CriticalPoint> out;
    for (std::size_t i : dedup_indices(coords, d, tau)) out.push_back(points[i]);
    return out;
}

}  // namespace cpe
