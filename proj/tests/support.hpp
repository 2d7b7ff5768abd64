#pragma once

#include <algorithm>
#include <vector>

#include "hyperdecay/hypergraph.hpp"
#include "hyperdecay/random.hpp"

namespace testsupport {

using namespace hyperdecay;

// Random hypergraph with n vertices and m edges of size in [min_size, max_size].
inline Hypergraph random_hypergraph(Rng& rng, std::size_t n, std::size_t m, std::size_t min_size,
                                    std::size_t max_size) {
    std::vector<std::vector<Vertex>> edges;
    std::vector<Vertex> all(n);
    for (std::size_t v = 0; v < n; ++v) all[v] = static_cast<Vertex>(v);
    for (std::size_t e = 0; e < m; ++e) {
        std::size_t hi = std::min(max_size, n);
        std::size_t lo = std::min(min_size, hi);
        std::size_t size = lo + uniform_below(rng, hi - lo + 1);
        shuffle(all, rng);
        edges.emplace_back(all.begin(), all.begin() + static_cast<long>(size));
    }
    return Hypergraph(n, edges);
}

// Random pinning that is valid for h: each vertex is pinned with probability
// `rate`, occupied only if none of its edges already holds an occupied vertex.
inline Pinning random_pinning(Rng& rng, const Hypergraph& h, double rate) {
    Pinning pinning;
    std::vector<char> edge_full(h.num_edges(), 0);
    for (Vertex v = 0; v < h.num_vertices(); ++v) {
        if (uniform_unit(rng) >= rate) continue;
        bool can_occupy = true;
        for (EdgeId e : h.incident_edges(v)) can_occupy = can_occupy && !edge_full[e];
        if (can_occupy && uniform_unit(rng) < 0.5) {
            pinning.pin(v, Spin::Occupied);
            for (EdgeId e : h.incident_edges(v)) edge_full[e] = 1;
        } else {
            pinning.pin(v, Spin::Unoccupied);
        }
    }
    return pinning;
}

// Random hypergraph with max degree <= max_degree and edge sizes in [2, max_size].
inline Hypergraph random_bounded_hypergraph(Rng& rng, std::size_t n, std::size_t m, std::size_t max_degree,
                                            std::size_t max_size) {
    std::vector<std::size_t> degree(n, 0);
    std::vector<std::vector<Vertex>> edges;
    for (std::size_t e = 0; e < m; ++e) {
        std::vector<Vertex> open;
        for (Vertex v = 0; v < n; ++v)
            if (degree[v] < max_degree) open.push_back(v);
        if (open.size() < 2) break;
        std::size_t hi = std::min(max_size, open.size());
        std::size_t size = 2 + uniform_below(rng, hi - 1);
        shuffle(open, rng);
        open.resize(size);
        for (Vertex v : open) ++degree[v];
        edges.push_back(open);
    }
    return Hypergraph(n, edges);
}

// Weighted count of matchings (pairwise disjoint edge sets), by enumeration.
inline double matching_partition(const Hypergraph& h, double lambda) {
    std::size_t m = h.num_edges();
    std::vector<char> used(h.num_vertices(), 0);
    double total = 0.0;
    auto rec = [&](auto&& self, std::size_t e, double weight) -> void {
        if (e == m) {
            total += weight;
            return;
        }
        self(self, e + 1, weight);
        auto members = h.edge(static_cast<EdgeId>(e));
        for (Vertex v : members)
            if (used[v]) return;
        for (Vertex v : members) used[v] = 1;
        self(self, e + 1, weight * lambda);
        for (Vertex v : members) used[v] = 0;
    };
    rec(rec, 0, 1.0);
    return total;
}

inline Hypergraph triangle() { return Hypergraph(3, {{0, 1}, {1, 2}, {0, 2}}); }

}  // namespace testsupport
