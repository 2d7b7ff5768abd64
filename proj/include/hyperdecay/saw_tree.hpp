#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hyperdecay/hypergraph.hpp"
#include "hyperdecay/ratio.hpp"

namespace hyperdecay {

// Thrown when a full expansion exceeds its node budget.
class ExpansionLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Per-vertex ranking of incident edges. Rank 0 is the highest-ranked edge.
class EdgeOrdering {
public:
    // Rank edges by input index (the default).
    static EdgeOrdering input_order(const Hypergraph& h);
    // Independent uniform shuffle of each vertex's incident edges.
    static EdgeOrdering shuffled(const Hypergraph& h, std::uint64_t seed);

    // Throws InputError unless per_vertex[v] is a permutation of v's incident edges.
    EdgeOrdering(const Hypergraph& h, std::vector<std::vector<EdgeId>> per_vertex);

    std::span<const EdgeId> at(Vertex v) const { return order_[v]; }
    std::uint32_t rank(Vertex v, EdgeId e) const;

private:
    EdgeOrdering() = default;
    void build_ranks(const Hypergraph& h);

    std::vector<std::vector<EdgeId>> order_;
    // rank_[v] holds (edge, rank) pairs sorted by edge.
    std::vector<std::vector<std::pair<EdgeId, std::uint32_t>>> rank_;
};

// Walk state for the hypergraph self-avoiding-walk tree. The current node is
// the walk (v_0, e_1, v_1, ..., e_l, v_l); extending it enumerates the node's
// child groups with both self-avoidance conditions and the cycle-closing
// deletion rule applied.
class SawWalker {
public:
    struct Group {
        EdgeId edge;
        std::vector<Vertex> children;  // increasing vertex index
    };

    SawWalker(const Hypergraph& h, const EdgeOrdering& ordering, Vertex root);

    Vertex end() const { return path_vertices_.back(); }
    std::size_t depth() const { return path_edges_.size(); }

    // Child groups of the current node in rank order of the extension edge at
    // the current end. Deleted children and emptied groups are omitted.
    void child_groups(std::vector<Group>& out) const;

    void push(EdgeId via, Vertex next);
    void pop();

private:
    // True when the node reached by extending the walk with (via, next) is
    // deleted: some edge at `next` closes a cycle at a walk vertex y and is
    // ranked higher at y than the edge by which the walk left y.
    bool closes_cycle_higher(EdgeId via, Vertex next) const;

    const Hypergraph& h_;
    const EdgeOrdering& ordering_;
    std::vector<Vertex> path_vertices_;
    std::vector<EdgeId> path_edges_;  // path_edges_[m] leaves path_vertices_[m]
    std::vector<std::int32_t> position_;
    std::vector<char> edge_used_;
    std::vector<std::uint32_t> touch_count_;  // used edges containing the vertex
};

struct SawGroup;

struct SawNode {
    Vertex vertex = 0;
    std::optional<Spin> pinned;
    double activity = 1.0;
    // Set on nodes cut off by a depth limit that would have had children.
    bool frontier = false;
    std::vector<SawGroup> groups;
};

struct SawGroup {
    EdgeId edge = 0;
    std::vector<SawNode> children;
};

struct SawTreeOptions {
    std::optional<std::size_t> depth_limit;
    std::size_t max_nodes = 2'000'000;
};

// Materializes T_SAW(H, root). Pinned nodes are leaves (their subtree cannot
// change their ratio). Throws ExpansionLimitError past options.max_nodes.
SawNode build_saw_tree(const Hypergraph& h, Vertex root, const EdgeOrdering& ordering, const Pinning& pinning,
                       const ActivityVector& activity, SawTreeOptions options = {});

std::size_t count_nodes(const SawNode& root);
std::size_t tree_height(const SawNode& root);

// Tree recursion over a materialized tree. Frontier nodes take [0, inf].
RatioInterval evaluate_tree(const SawNode& root);

// Root marginal Pr[root occupied] on the full SAW tree. Equal to the exact
// marginal of the root vertex in H.
double saw_marginal_exact(const Hypergraph& h, Vertex root, const Pinning& pinning, const ActivityVector& activity,
                          const EdgeOrdering& ordering, std::size_t max_nodes = 2'000'000);
double saw_marginal_exact(const Hypergraph& h, Vertex root, const Pinning& pinning, const ActivityVector& activity);

// Indented text dump: "vertex=<id> pinned=<O|U|-> group=<edge-id>", two
// spaces per level, "group=-" at the root.
void dump_saw_tree(std::ostream& out, const SawNode& root);

}  // namespace hyperdecay
