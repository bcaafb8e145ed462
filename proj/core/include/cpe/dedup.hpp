#pragma once

#include "cpe/critical_point.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace cpe {

/// Integer lattice cell of a point at scale 20 * tau.
using HashGridIndex = std::vector<std::int64_t>;

/// Every floor/ceiling combination of x / (20 tau): up to 2^d distinct indices. Any two
/// points closer than tau share at least one of them.
std::vector<HashGridIndex> candidate_indices(std::span<const double> x, double tau);

/// Mixes a lattice index into a 64-bit bucket key (hash_combine with a splitmix64 finalizer).
std::uint64_t bucket_key(std::span<const std::int64_t> index);

/// Greedy first-wins duplicate removal with a spatial hash. Points are visited in input order;
/// a point within distance tau (strictly) of an earlier survivor is dropped.
/// `coords` holds points contiguously, `dim` values each. Returns survivor indices in order.
std::vector<std::size_t> dedup_indices(std::span<const double> coords, std::size_t dim, double tau);

/// dedup_indices over critical point parameter locations.
std::vector<CriticalPoint> dedup(const std::vector<CriticalPoint>& points, double tau);

}  // namespace cpe
