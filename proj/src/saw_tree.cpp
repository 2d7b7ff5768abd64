#include "hyperdecay/saw_tree.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "hyperdecay/random.hpp"

namespace hyperdecay {

EdgeOrdering EdgeOrdering::input_order(const Hypergraph& h) {
    EdgeOrdering ord;
    for (Vertex v = 0; v < h.num_vertices(); ++v) {
        auto inc = h.incident_edges(v);
        ord.order_.emplace_back(inc.begin(), inc.end());
    }
    ord.build_ranks(h);
    return ord;
}

EdgeOrdering EdgeOrdering::shuffled(const Hypergraph& h, std::uint64_t seed) {
    EdgeOrdering ord;
    Rng rng = make_rng(seed, 0x5a3);
    for (Vertex v = 0; v < h.num_vertices(); ++v) {
        auto inc = h.incident_edges(v);
        std::vector<EdgeId> list(inc.begin(), inc.end());
        shuffle(list, rng);
        ord.order_.push_back(std::move(list));
    }
    ord.build_ranks(h);
    return ord;
}

EdgeOrdering::EdgeOrdering(const Hypergraph& h, std::vector<std::vector<EdgeId>> per_vertex)
    : order_(std::move(per_vertex)) {
    if (order_.size() != h.num_vertices()) throw InputError("edge ordering must list every vertex");
    for (Vertex v = 0; v < h.num_vertices(); ++v) {
        std::vector<EdgeId> sorted = order_[v];
        std::sort(sorted.begin(), sorted.end());
        auto inc = h.incident_edges(v);
        if (!std::equal(sorted.begin(), sorted.end(), inc.begin(), inc.end())) {
            throw InputError("edge ordering at vertex " + std::to_string(v) + " is not a permutation of its edges", v);
        }
    }
    build_ranks(h);
}

void EdgeOrdering::build_ranks(const Hypergraph& h) {
    rank_.assign(h.num_vertices(), {});
    for (Vertex v = 0; v < h.num_vertices(); ++v) {
        for (std::uint32_t r = 0; r < order_[v].size(); ++r) rank_[v].emplace_back(order_[v][r], r);
        std::sort(rank_[v].begin(), rank_[v].end());
    }
}

std::uint32_t EdgeOrdering::rank(Vertex v, EdgeId e) const {
    const auto& ranks = rank_[v];
    auto it = std::lower_bound(ranks.begin(), ranks.end(), std::pair<EdgeId, std::uint32_t>{e, 0});
    return it->second;
}

SawWalker::SawWalker(const Hypergraph& h, const EdgeOrdering& ordering, Vertex root)
    : h_(h),
      ordering_(ordering),
      path_vertices_{root},
      position_(h.num_vertices(), -1),
      edge_used_(h.num_edges(), 0),
      touch_count_(h.num_vertices(), 0) {
    if (root >= h.num_vertices()) throw InputError("root vertex out of range", root);
    position_[root] = 0;
}

bool SawWalker::closes_cycle_higher(EdgeId via, Vertex next) const {
    Vertex current = end();
    for (EdgeId e : h_.incident_edges(next)) {
        if (e == via) continue;
        // touch_count_[next] == 0, so no used edge contains next.
        for (Vertex y : h_.edge(e)) {
            if (position_[y] < 0) continue;
            EdgeId left_by = (y == current) ? via : path_edges_[position_[y]];
            if (ordering_.rank(y, e) < ordering_.rank(y, left_by)) return true;
        }
    }
    return false;
}

void SawWalker::child_groups(std::vector<Group>& out) const {
    out.clear();
    Vertex current = end();
    for (EdgeId e : ordering_.at(current)) {
        if (edge_used_[e]) continue;
        Group group{e, {}};
        for (Vertex x : h_.edge(e)) {
            if (x == current || position_[x] >= 0 || touch_count_[x] > 0) continue;
            if (closes_cycle_higher(e, x)) continue;
            group.children.push_back(x);
        }
        if (!group.children.empty()) out.push_back(std::move(group));
    }
}

void SawWalker::push(EdgeId via, Vertex next) {
    edge_used_[via] = 1;
    for (Vertex x : h_.edge(via)) ++touch_count_[x];
    path_edges_.push_back(via);
    position_[next] = static_cast<std::int32_t>(path_vertices_.size());
    path_vertices_.push_back(next);
}

void SawWalker::pop() {
    Vertex last = path_vertices_.back();
    position_[last] = -1;
    path_vertices_.pop_back();
    EdgeId via = path_edges_.back();
    path_edges_.pop_back();
    edge_used_[via] = 0;
    for (Vertex x : h_.edge(via)) --touch_count_[x];
}

namespace {

struct Builder {
    SawWalker walker;
    const Pinning& pinning;
    const ActivityVector& activity;
    SawTreeOptions options;
    std::size_t nodes = 0;

    SawNode build() {
        if (++nodes > options.max_nodes) {
            throw ExpansionLimitError("SAW tree exceeds " + std::to_string(options.max_nodes) + " nodes");
        }
        SawNode node;
        node.vertex = walker.end();
        node.pinned = pinning.get(node.vertex);
        node.activity = activity.at(node.vertex);
        if (node.pinned) return node;
        std::vector<SawWalker::Group> groups;
        walker.child_groups(groups);
        if (groups.empty()) return node;
        if (options.depth_limit && walker.depth() >= *options.depth_limit) {
            node.frontier = true;
            return node;
        }
        for (const auto& g : groups) {
            SawGroup group;
            group.edge = g.edge;
            for (Vertex x : g.children) {
                walker.push(g.edge, x);
                group.children.push_back(build());
                walker.pop();
            }
            node.groups.push_back(std::move(group));
        }
        return node;
    }
};

}  // namespace

SawNode build_saw_tree(const Hypergraph& h, Vertex root, const EdgeOrdering& ordering, const Pinning& pinning,
                       const ActivityVector& activity, SawTreeOptions options) {
    pinning.validate_for(h);
    Builder builder{SawWalker(h, ordering, root), pinning, activity, options};
    return builder.build();
}

std::size_t count_nodes(const SawNode& root) {
    std::size_t total = 1;
    for (const auto& g : root.groups)
        for (const auto& c : g.children) total += count_nodes(c);
    return total;
}

std::size_t tree_height(const SawNode& root) {
    std::size_t h = 0;
    for (const auto& g : root.groups)
        for (const auto& c : g.children) h = std::max(h, 1 + tree_height(c));
    return h;
}

RatioInterval evaluate_tree(const SawNode& node) {
    if (node.pinned) {
        return RatioInterval::exact(*node.pinned == Spin::Occupied ? Ratio::infinity() : Ratio::finite(0.0));
    }
    if (node.frontier) return RatioInterval::unknown();
    RecursionAccumulator lower(node.activity);
    RecursionAccumulator upper(node.activity);
    for (const auto& g : node.groups) {
        lower.begin_group();
        upper.begin_group();
        for (const auto& c : g.children) {
            RatioInterval r = evaluate_tree(c);
            lower.add_child(r.hi);
            upper.add_child(r.lo);
        }
        lower.end_group();
        upper.end_group();
    }
    return {lower.result(), upper.result()};
}

double saw_marginal_exact(const Hypergraph& h, Vertex root, const Pinning& pinning, const ActivityVector& activity,
                          const EdgeOrdering& ordering, std::size_t max_nodes) {
    SawNode tree = build_saw_tree(h, root, ordering, pinning, activity, {std::nullopt, max_nodes});
    return evaluate_tree(tree).lo.probability();
}

double saw_marginal_exact(const Hypergraph& h, Vertex root, const Pinning& pinning, const ActivityVector& activity) {
    return saw_marginal_exact(h, root, pinning, activity, EdgeOrdering::input_order(h));
}

namespace {

void dump(std::ostream& out, const SawNode& node, std::size_t depth, const std::string& group) {
    out << std::string(2 * depth, ' ') << "vertex=" << node.vertex << " pinned="
        << (node.pinned ? (*node.pinned == Spin::Occupied ? "O" : "U") : "-") << " group=" << group << '\n';
    for (const auto& g : node.groups) {
        for (const auto& c : g.children) dump(out, c, depth + 1, std::to_string(g.edge));
    }
}

}  // namespace

void dump_saw_tree(std::ostream& out, const SawNode& root) { dump(out, root, 0, "-"); }

}  // namespace hyperdecay
