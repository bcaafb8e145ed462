#include "cpe/pl_critical.hpp"

#include "cpe/error.hpp"
#include "cpe/parallel.hpp"

#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cpe {

std::vector<std::size_t> SampledGrid::unflatten(std::size_t flat) const {
    std::vector<std::size_t> idx(dim());
    for (std::size_t l = dim(); l-- > 0;) {
        idx[l] = flat % counts[l];
        flat /= counts[l];
    }
    return idx;
}

std::size_t SampledGrid::flatten(std::span<const std::size_t> index) const {
    std::size_t flat = 0;
    for (std::size_t l = 0; l < dim(); ++l) flat = flat * counts[l] + index[l];
    return flat;
}

SampledGrid sample_grid(const TensorSplineModel& model, std::span<const std::size_t> resolution,
                        std::size_t threads) {
    if (resolution.size() != model.dim()) throw std::invalid_argument("sample_grid: one resolution per axis");
    SampledGrid grid;
    grid.counts.assign(resolution.begin(), resolution.end());
    grid.extents = model.extents();
    std::size_t total = 1;
    for (auto m : grid.counts) {
        if (m < 2) throw std::invalid_argument("sample_grid: resolution must be >= 2");
        total *= m;
    }
    grid.values.resize(total);
    parallel_for(total, threads, [&](std::size_t begin, std::size_t end) {
        std::vector<double> u(grid.dim());
        for (std::size_t v = begin; v < end; ++v) {
            const auto idx = grid.unflatten(v);
            for (std::size_t l = 0; l < grid.dim(); ++l) u[l] = grid.param(l, idx[l]);
            grid.values[v] = model.evaluate(u);
        }
    });
    return grid;
}

std::vector<std::size_t> upsampled_resolution(std::span<const std::size_t> source, std::size_t ratio) {
    const std::size_t d = source.size();
    if (d == 0 || ratio == 0) throw std::invalid_argument("upsampling ratio must be positive");
    const auto factor = static_cast<std::size_t>(std::llround(std::pow(static_cast<double>(ratio), 1.0 / d)));
    std::size_t check = 1;
    for (std::size_t l = 0; l < d; ++l) check *= factor;
    if (check != ratio) {
        throw std::invalid_argument("upsampling ratio " + std::to_string(ratio) + " is not a " +
                                    std::to_string(d) + "-th power");
    }
    std::vector<std::size_t> out(d);
    for (std::size_t l = 0; l < d; ++l) out[l] = (source[l] - 1) * factor + 1;
    return out;
}

std::vector<std::vector<int>> freudenthal_offsets(std::size_t dim) {
    std::vector<std::vector<int>> offsets;
    for (unsigned mask = 1; mask < (1u << dim); ++mask) {
        std::vector<int> o(dim);
        for (std::size_t l = 0; l < dim; ++l) o[l] = (mask >> l) & 1u;
        offsets.push_back(o);
        for (auto& c : o) c = -c;
        offsets.push_back(std::move(o));
    }
    return offsets;
}

namespace {

// Precomputed link graph of an interior vertex: offsets plus the offset pairs that span a
// triangle with the center vertex.
struct LinkGraph {
    std::vector<std::vector<int>> offsets;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
};

const LinkGraph& link_graph(std::size_t dim) {
    static const std::array<LinkGraph, 4> graphs = [] {
        std::array<LinkGraph, 4> g;
        for (std::size_t d = 1; d <= 3; ++d) {
            g[d].offsets = freudenthal_offsets(d);
            const auto& off = g[d].offsets;
            const auto is_offset = [&](const std::vector<int>& v) {
                for (const auto& o : off) {
                    if (o == v) return true;
                }
                return false;
            };
            for (std::size_t a = 0; a < off.size(); ++a) {
                for (std::size_t b = a + 1; b < off.size(); ++b) {
                    std::vector<int> diff(d);
                    for (std::size_t l = 0; l < d; ++l) diff[l] = off[a][l] - off[b][l];
                    if (is_offset(diff)) g[d].edges.emplace_back(a, b);
                }
            }
        }
        return g;
    }();
    return graphs.at(dim);
}

std::size_t find_root(std::array<std::size_t, 32>& parent, std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
}

}  // namespace

LinkComponents link_components(const SampledGrid& grid, std::size_t vertex) {
    const std::size_t d = grid.dim();
    if (d < 1 || d > 3) throw UnsupportedDimension("PL link classification supports d <= 3");
    const LinkGraph& graph = link_graph(d);
    const auto idx = grid.unflatten(vertex);
    const double fv = grid.values[vertex];

    LinkComponents out;
    for (std::size_t l = 0; l < d; ++l) {
        if (idx[l] == 0 || idx[l] + 1 == grid.counts[l]) out.boundary = true;
    }

    // side: 0 = outside grid, 1 = lower, 2 = upper
    const std::size_t k = graph.offsets.size();
    std::array<int, 32> side{};
    std::vector<std::size_t> nb(d);
    for (std::size_t o = 0; o < k; ++o) {
        bool valid = true;
        for (std::size_t l = 0; l < d; ++l) {
            const auto c = static_cast<long long>(idx[l]) + graph.offsets[o][l];
            if (c < 0 || c >= static_cast<long long>(grid.counts[l])) {
                valid = false;
                break;
            }
            nb[l] = static_cast<std::size_t>(c);
        }
        if (!valid) continue;
        const std::size_t n = grid.flatten(nb);
        const double fn = grid.values[n];
        side[o] = (fn < fv || (fn == fv && n < vertex)) ? 1 : 2;
    }

    std::array<std::size_t, 32> parent{};
    std::iota(parent.begin(), parent.begin() + static_cast<std::ptrdiff_t>(k), std::size_t{0});
    for (const auto& [a, b] : graph.edges) {
        if (side[a] != 0 && side[a] == side[b]) parent[find_root(parent, a)] = find_root(parent, b);
    }
    for (std::size_t o = 0; o < k; ++o) {
        if (side[o] == 0 || find_root(parent, o) != o) continue;
        (side[o] == 1 ? out.lower : out.upper) += 1;
    }
    return out;
}

std::vector<PLCriticalPoint> pl_critical_points(const SampledGrid& grid, const PLOptions& options) {
    const std::size_t d = grid.dim();
    if (d != 2 && d != 3) throw UnsupportedDimension("PL extraction supports d = 2 or 3");
    const std::size_t total = grid.values.size();

    // 0 regular, otherwise 1 + index
    std::vector<signed char> verdict(total, 0);
    parallel_for(total, options.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t v = begin; v < end; ++v) {
            const auto link = link_components(grid, v);
            if (link.boundary && !options.include_boundary) continue;
            int index = -1;
            if (link.lower == 0) {
                index = 0;
            } else if (link.upper == 0) {
                index = static_cast<int>(d);
            } else if (link.lower > 1 || link.upper > 1) {
                index = (d == 2 || link.lower > 1) ? 1 : 2;
            }
            if (index >= 0) verdict[v] = static_cast<signed char>(index + 1);
        }
    });

    std::vector<PLCriticalPoint> out;
    for (std::size_t v = 0; v < total; ++v) {
        if (verdict[v] == 0) continue;
        const auto link = link_components(grid, v);
        PLCriticalPoint cp;
        cp.vertex = v;
        cp.coords = grid.unflatten(v);
        cp.location.resize(d);
        cp.physical.resize(d);
        for (std::size_t l = 0; l < d; ++l) {
            cp.location[l] = grid.param(l, cp.coords[l]);
            cp.physical[l] = grid.extents[l].to_physical(cp.location[l]);
        }
        cp.value = grid.values[v];
        cp.index = verdict[v] - 1;
        cp.type = morse_type(cp.index, d);
        cp.boundary = link.boundary;
        cp.lower_components = link.lower;
        cp.upper_components = link.upper;
        out.push_back(std::move(cp));
    }
    return out;
}

}  // namespace cpe
