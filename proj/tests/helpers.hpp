#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <vector>

#include "rtprof/graph.hpp"
#include "rtprof/profiles.hpp"

namespace rtprof::testing {

// Erdos-Renyi G(n, prob), resampled until connected. Deterministic in seed.
inline Graph random_connected_graph(std::size_t n, double prob,
                                    std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (;;) {
        std::vector<Edge> edges;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (coin(rng) < prob)
                    edges.push_back({static_cast<VertexId>(i),
                                     static_cast<VertexId>(j)});
        Graph g = Graph::from_edges(n, std::move(edges));
        if (g.is_connected()) return g;
    }
}

inline Graph random_graph(std::size_t n, double prob, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (coin(rng) < prob)
                edges.push_back({static_cast<VertexId>(i),
                                 static_cast<VertexId>(j)});
    return Graph::from_edges(n, std::move(edges));
}

// Random tree by uniform attachment.
inline Graph random_tree(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Edge> edges;
    for (std::size_t v = 1; v < n; ++v) {
        const auto parent = static_cast<VertexId>(rng() % v);
        edges.push_back({parent, static_cast<VertexId>(v)});
    }
    return Graph::from_edges(n, std::move(edges));
}

// Minimum epsilon-cut size by subset enumeration in ascending cardinality.
// Independent of the branch-and-bound path in cut_exact.
inline std::size_t exhaustive_cut_size(const Graph& g, Rational eps) {
    const std::size_t n = g.num_vertices();
    const auto limit = std::uint32_t{1} << n;
    for (std::size_t size = 0; size <= n; ++size) {
        for (std::uint32_t mask = 0; mask < limit; ++mask) {
            if (static_cast<std::size_t>(std::popcount(mask)) != size) continue;
            std::vector<VertexId> s;
            for (std::size_t v = 0; v < n; ++v)
                if (mask & (std::uint32_t{1} << v))
                    s.push_back(static_cast<VertexId>(v));
            auto sizes = components_after_removal(g, s);
            const std::size_t largest = sizes.empty() ? 0 : sizes.front();
            if (static_cast<std::int64_t>(largest) * eps.den <=
                eps.num * static_cast<std::int64_t>(n))
                return size;
        }
    }
    return n;
}

// Direct two-valued h^1 search over raw subsets; a slower, independent
// route than the Gray-code sweep inside h1_sweep.
inline double naive_two_valued_h1(const Graph& g) {
    const std::size_t n = g.num_vertices();
    double best = std::numeric_limits<double>::infinity();
    for (std::uint32_t mask = 1; mask + 1 < (std::uint32_t{1} << n); ++mask) {
        std::size_t size_s = static_cast<std::size_t>(std::popcount(mask));
        std::size_t crossing = 0;
        for (const auto& e : g.edges()) {
            const bool us = mask & (std::uint32_t{1} << e.u);
            const bool vs = mask & (std::uint32_t{1} << e.v);
            if (us != vs) ++crossing;
        }
        const double value = static_cast<double>(n) *
                             static_cast<double>(crossing) /
                             (2.0 * static_cast<double>(size_s) *
                              static_cast<double>(n - size_s));
        best = std::min(best, value);
    }
    return best;
}

}  // namespace rtprof::testing
