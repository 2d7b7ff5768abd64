#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperdecay {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

// Raised for malformed user input (bad edges, bad pinnings, unparsable files).
// `index` carries the offending edge/line/vertex index when one applies.
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what, std::optional<std::size_t> index = std::nullopt)
        : std::invalid_argument(what), index_(index) {}
    std::optional<std::size_t> index() const { return index_; }

private:
    std::optional<std::size_t> index_;
};

struct HypergraphStats {
    std::size_t max_degree = 0;
    std::size_t max_edge_size = 0;
    // d = max_degree - 1 and k = max_edge_size - 1, clamped at 0.
    std::size_t d = 0;
    std::size_t k = 0;
};

// A finite hypergraph on vertices [0, n). Edges are stored sorted; an edge may
// be empty or a singleton (both are vacuous for the independence constraint),
// and two edges may overlap in any number of vertices.
class Hypergraph {
public:
    Hypergraph() = default;

    // Throws InputError (with the edge index) on an out-of-range or repeated vertex.
    Hypergraph(std::size_t n, std::vector<std::vector<Vertex>> edges);

    std::size_t num_vertices() const { return n_; }
    std::size_t num_edges() const { return edges_.size(); }

    std::span<const Vertex> edge(EdgeId e) const { return edges_[e]; }
    const std::vector<std::vector<Vertex>>& edges() const { return edges_; }

    // Incident edges of v in increasing edge index.
    std::span<const EdgeId> incident_edges(Vertex v) const { return incidence_[v]; }
    std::size_t degree(Vertex v) const { return incidence_[v].size(); }

    HypergraphStats stats() const;

    // Optional typing (used by the branching module). Empty when untyped.
    const std::vector<int>& vertex_types() const { return vertex_type_; }
    const std::vector<int>& edge_types() const { return edge_type_; }
    bool is_typed() const { return !vertex_type_.empty() || !edge_type_.empty(); }
    void set_types(std::vector<int> vertex_type, std::vector<int> edge_type);

    bool operator==(const Hypergraph&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<std::vector<Vertex>> edges_;
    std::vector<std::vector<EdgeId>> incidence_;
    std::vector<int> vertex_type_;
    std::vector<int> edge_type_;
};

// validate_and_stats: construction already validates, this just reports.
inline HypergraphStats validate_and_stats(const Hypergraph& h) { return h.stats(); }

enum class Spin : std::uint8_t { Unoccupied = 0, Occupied = 1 };

// Partial assignment of vertices to occupied/unoccupied.
class Pinning {
public:
    Pinning() = default;
    explicit Pinning(std::map<Vertex, Spin> assignments) : assignments_(std::move(assignments)) {}

    void pin(Vertex v, Spin s) { assignments_[v] = s; }
    void unpin(Vertex v) { assignments_.erase(v); }
    std::optional<Spin> get(Vertex v) const;
    bool empty() const { return assignments_.empty(); }
    std::size_t size() const { return assignments_.size(); }
    const std::map<Vertex, Spin>& assignments() const { return assignments_; }

    // Valid iff every pinned vertex is < n and no hyperedge holds two occupied vertices.
    bool is_valid_for(const Hypergraph& h) const;
    // Throws InputError naming the offending vertex or edge.
    void validate_for(const Hypergraph& h) const;

    // Dense view: -1 free, 0 unoccupied, 1 occupied.
    std::vector<std::int8_t> dense(std::size_t n) const;

private:
    std::map<Vertex, Spin> assignments_;
};

// Default activity plus per-vertex overrides. An override of 0 behaves like an
// unoccupied pin.
class ActivityVector {
public:
    explicit ActivityVector(double lambda = 1.0);
    ActivityVector(double lambda, std::map<Vertex, double> overrides);

    double default_activity() const { return default_; }
    double at(Vertex v) const;
    void set(Vertex v, double value);
    const std::map<Vertex, double>& overrides() const { return overrides_; }

    // Dense per-vertex activities for vertices [0, n).
    std::vector<double> dense(std::size_t n) const;

private:
    double default_;
    std::map<Vertex, double> overrides_;
};

// Transposes the incidence matrix: vertices of H* are the edges of H, and
// edge v* of H* lists the edges of H containing v. Types are swapped along.
Hypergraph dualize(const Hypergraph& h);

struct GadgetResult {
    Hypergraph hypergraph;
    std::size_t copies = 1;  // t = floor((k+1)/2)
};

// Replaces every vertex of the graph g by t = floor((k+1)/2) copies and every
// graph edge by one hyperedge of size 2t holding the copies of both endpoints.
// When t >= 2 each isolated vertex also gets one edge over its t copies.
// Then Z_H(lambda) = Z_G(t * lambda). Throws InputError on any edge of size != 2.
GadgetResult gadget_reduce(const Hypergraph& g, std::size_t k);

}  // namespace hyperdecay
