#include "hyperdecay/hypergraph.hpp"

#include <algorithm>
#include <cmath>

namespace hyperdecay {

Hypergraph::Hypergraph(std::size_t n, std::vector<std::vector<Vertex>> edges)
    : n_(n), edges_(std::move(edges)), incidence_(n) {
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        auto& members = edges_[e];
        std::sort(members.begin(), members.end());
        for (std::size_t i = 0; i < members.size(); ++i) {
            if (members[i] >= n_) {
                throw InputError("edge " + std::to_string(e) + " contains vertex " +
                                     std::to_string(members[i]) + " outside [0, " + std::to_string(n_) + ")",
                                 e);
            }
            if (i > 0 && members[i] == members[i - 1]) {
                throw InputError("edge " + std::to_string(e) + " repeats vertex " + std::to_string(members[i]), e);
            }
        }
        for (Vertex v : members) incidence_[v].push_back(static_cast<EdgeId>(e));
    }
}

HypergraphStats Hypergraph::stats() const {
    HypergraphStats s;
    for (const auto& inc : incidence_) s.max_degree = std::max(s.max_degree, inc.size());
    for (const auto& e : edges_) s.max_edge_size = std::max(s.max_edge_size, e.size());
    s.d = s.max_degree > 0 ? s.max_degree - 1 : 0;
    s.k = s.max_edge_size > 0 ? s.max_edge_size - 1 : 0;
    return s;
}

void Hypergraph::set_types(std::vector<int> vertex_type, std::vector<int> edge_type) {
    if (!vertex_type.empty() && vertex_type.size() != n_) {
        throw InputError("vertex type vector has wrong length");
    }
    if (!edge_type.empty() && edge_type.size() != edges_.size()) {
        throw InputError("edge type vector has wrong length");
    }
    vertex_type_ = std::move(vertex_type);
    edge_type_ = std::move(edge_type);
}

std::optional<Spin> Pinning::get(Vertex v) const {
    auto it = assignments_.find(v);
    if (it == assignments_.end()) return std::nullopt;
    return it->second;
}

bool Pinning::is_valid_for(const Hypergraph& h) const {
    try {
        validate_for(h);
    } catch (const InputError&) {
        return false;
    }
    return true;
}

void Pinning::validate_for(const Hypergraph& h) const {
    for (const auto& [v, s] : assignments_) {
        if (v >= h.num_vertices()) {
            throw InputError("pinned vertex " + std::to_string(v) + " out of range", v);
        }
    }
    for (std::size_t e = 0; e < h.num_edges(); ++e) {
        int occupied = 0;
        for (Vertex v : h.edge(static_cast<EdgeId>(e))) {
            if (get(v) == Spin::Occupied) ++occupied;
        }
        if (occupied > 1) {
            throw InputError("pinning occupies two vertices of edge " + std::to_string(e), e);
        }
    }
}

std::vector<std::int8_t> Pinning::dense(std::size_t n) const {
    std::vector<std::int8_t> out(n, -1);
    for (const auto& [v, s] : assignments_) {
        if (v < n) out[v] = static_cast<std::int8_t>(s);
    }
    return out;
}

ActivityVector::ActivityVector(double lambda) : ActivityVector(lambda, {}) {}

ActivityVector::ActivityVector(double lambda, std::map<Vertex, double> overrides)
    : default_(lambda), overrides_(std::move(overrides)) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InputError("activity must be a positive finite number");
    for (const auto& [v, a] : overrides_) {
        if (!(a >= 0.0) || !std::isfinite(a)) {
            throw InputError("activity override for vertex " + std::to_string(v) + " must be nonnegative", v);
        }
    }
}

double ActivityVector::at(Vertex v) const {
    auto it = overrides_.find(v);
    return it == overrides_.end() ? default_ : it->second;
}

void ActivityVector::set(Vertex v, double value) {
    if (!(value >= 0.0) || !std::isfinite(value)) throw InputError("activity override must be nonnegative", v);
    overrides_[v] = value;
}

std::vector<double> ActivityVector::dense(std::size_t n) const {
    std::vector<double> out(n, default_);
    for (const auto& [v, a] : overrides_) {
        if (v < n) out[v] = a;
    }
    return out;
}

Hypergraph dualize(const Hypergraph& h) {
    std::vector<std::vector<Vertex>> dual_edges(h.num_vertices());
    for (Vertex v = 0; v < h.num_vertices(); ++v) {
        for (EdgeId e : h.incident_edges(v)) dual_edges[v].push_back(e);
    }
    Hypergraph dual(h.num_edges(), std::move(dual_edges));
    if (h.is_typed()) dual.set_types(h.edge_types(), h.vertex_types());
    return dual;
}

GadgetResult gadget_reduce(const Hypergraph& g, std::size_t k) {
    if (k == 0) throw InputError("gadget reduction needs k >= 1");
    const std::size_t t = (k + 1) / 2;
    std::vector<std::vector<Vertex>> edges;
    edges.reserve(g.num_edges());
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        auto members = g.edge(static_cast<EdgeId>(e));
        if (members.size() != 2) {
            throw InputError("gadget reduction needs a graph; edge " + std::to_string(e) + " has size " +
                                 std::to_string(members.size()),
                             e);
        }
        std::vector<Vertex> he;
        he.reserve(2 * t);
        for (Vertex endpoint : members) {
            for (std::size_t i = 0; i < t; ++i) he.push_back(static_cast<Vertex>(endpoint * t + i));
        }
        edges.push_back(std::move(he));
    }
    // An isolated vertex has no S_e to keep its copies exclusive; one extra
    // edge over its copies does, within the same degree and size bounds.
    if (t >= 2) {
        for (Vertex v = 0; v < g.num_vertices(); ++v) {
            if (g.degree(v) != 0) continue;
            std::vector<Vertex> he;
            for (std::size_t i = 0; i < t; ++i) he.push_back(static_cast<Vertex>(v * t + i));
            edges.push_back(std::move(he));
        }
    }
    return {Hypergraph(g.num_vertices() * t, std::move(edges)), t};
}

}  // namespace hyperdecay
