#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hyperdecay/hypergraph.hpp"
#include "hyperdecay/io.hpp"

namespace hyperdecay {

// D[i][j]: number of type-j edges at a type-i vertex.
// K[j][i]: number of type-i vertices in a type-j edge.
struct BranchingMatrices {
    int d = 1;
    int k = 1;
    std::vector<std::vector<int>> D;
    std::vector<std::vector<int>> K;

    std::size_t tau_v() const { return D.size(); }
    std::size_t tau_e() const { return K.size(); }
};

struct BranchingViolation {
    enum class Kind { Shape, Negative, VertexRowSum, EdgeRowSum, Support, Reducible };
    Kind kind;
    // Row/column of the offending entry; for Reducible, the first type not
    // reachable from vertex type 0 (col = 0 for a vertex type, 1 for an edge type).
    std::size_t row = 0;
    std::size_t col = 0;
    std::string message;
};

std::optional<BranchingViolation> validate_branching(const BranchingMatrices& b);

// D = [[1, d], [d, 1]], K = [[k, 1], [1, k]]; index 0 is '+', 1 is '-'.
BranchingMatrices hat_matrices(int d, int k);

// Text format: "tau_v tau_e d k", then tau_v rows of D, then tau_e rows of K.
// '#' comments allowed. Throws InputError on malformed input; does not validate.
BranchingMatrices parse_branching(std::istream& in);
BranchingMatrices read_branching(const std::string& path);
void write_branching(std::ostream& out, const BranchingMatrices& b);

// Exact rational on 64-bit integers, always reduced with a positive
// denominator. Arithmetic throws std::overflow_error rather than wrapping.
class Fraction {
public:
    Fraction(std::int64_t num = 0, std::int64_t den = 1);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string str() const;

    friend Fraction operator+(const Fraction& a, const Fraction& b);
    friend Fraction operator-(const Fraction& a, const Fraction& b);
    friend Fraction operator*(const Fraction& a, const Fraction& b);
    friend Fraction operator/(const Fraction& a, const Fraction& b);
    friend bool operator==(const Fraction& a, const Fraction& b) = default;
    friend bool operator<(const Fraction& a, const Fraction& b);

private:
    std::int64_t num_;
    std::int64_t den_;
};

// A detailed-balance equation p_i d_ij = q_j k_ji that the propagated values break.
struct BalanceWitness {
    std::size_t i = 0;
    std::size_t j = 0;
    Fraction lhs;  // p_i d_ij
    Fraction rhs;  // q_j k_ji
};

struct Reversibility {
    bool reversible = false;
    // Positive solution normalized to sum(p) + sum(q) = 1 when reversible;
    // otherwise the propagated values (p_0 = 1) that produced the witness.
    std::vector<Fraction> p;
    std::vector<Fraction> q;
    std::optional<BalanceWitness> witness;
};

// Exact decision by spanning-tree propagation from vertex type 0 followed by
// a check of every remaining equation. Throws InputError if b is invalid.
Reversibility reversibility(const BranchingMatrices& b);

struct StationaryDistributions {
    std::vector<Fraction> p;  // vertex-type distribution
    std::vector<Fraction> q;  // edge-type distribution
};

// Throws InputError if b is invalid or not reversible.
StationaryDistributions stationary_distributions(const BranchingMatrices& b);

// residual_s = p_s - lambda (1 - p_s)^(-d) prod_j (1 - sum_i k_ji p_i)^(d_sj).
// Throws std::domain_error if some p_s is outside [0, 1) or an edge sum is >= 1.
std::vector<double> invariant_marginal_residual(const BranchingMatrices& b, double lambda,
                                                const std::vector<double>& p);

class NotReversibleError : public InputError {
public:
    NotReversibleError(const std::string& what, BalanceWitness witness)
        : InputError(what), witness(std::move(witness)) {}
    BalanceWitness witness;
};

class InfeasibleSizeError : public InputError {
public:
    InfeasibleSizeError(const std::string& what, std::size_t next_feasible)
        : InputError(what), next_feasible(next_feasible) {}
    std::size_t next_feasible;
};

// n is feasible when d_st ceil(p_s n) = k_ts ceil(q_t n) for every pair with
// d_st > 0, where p, q are normalized to sum 1 together.
bool is_feasible_size(const BranchingMatrices& b, std::size_t n);
std::size_t next_feasible_size(const BranchingMatrices& b, std::size_t n);

// Random typed hypergraph with ceil(p_s n) type-s vertices and ceil(q_t n)
// type-t edges, wired by one uniform stub matching per (s, t). Vertices and
// edges are numbered type by type. Multi-incidences are kept, so the result
// is a raw typed text (edges may list a vertex twice).
io::HypergraphText generate_Hn(const BranchingMatrices& b, std::size_t n, std::uint64_t seed);

// Rooted typed hypertree. Node 0 is the root vertex.
struct TypedNeighborhood {
    std::vector<int> vertex_type;
    std::vector<int> edge_type;
    std::vector<std::vector<std::size_t>> vertex_children;  // child edges of each vertex
    std::vector<std::vector<std::size_t>> edge_children;    // child vertices of each edge

    std::size_t num_vertices() const { return vertex_type.size(); }
    std::size_t num_edges() const { return edge_type.size(); }
    // Equal for two neighborhoods iff they are isomorphic as rooted typed trees.
    std::string canonical() const;
};

// Expansion to distance `radius` from a root of the given type: the root gets
// D[i][j] edges of type j, a vertex of type s entered through a type-t edge
// gets D[s][j] - [j == t] further type-j edges, and a type-t edge entered from
// a type-s vertex holds K[t][s'] - [s' == s] further type-s' vertices. Throws
// InputError if b is invalid, the type is out of range, or the tree would
// exceed max_nodes.
TypedNeighborhood tree_neighborhood(const BranchingMatrices& b, int root_type, std::size_t radius,
                                    std::size_t max_nodes = 5'000'000);

struct LocalConvergence {
    std::vector<std::size_t> sampled;  // per vertex type
    std::vector<std::size_t> matched;
    std::vector<double> fraction;      // NaN when a type was never sampled
};

// The ball of radius t around v holds the vertices within distance t and the
// edges through vertices at distance < t. A sample matches when the ball is a
// hypertree (no multi-incidence, #V + #E - 1 = #incidences) isomorphic to
// tree_neighborhood(b, type(v), t). samples = 0 uses every vertex once;
// otherwise vertices are drawn with replacement from stream `seed`.
// Throws InputError if h is untyped or its types fall outside b.
LocalConvergence local_convergence_rate(const io::HypergraphText& h, const BranchingMatrices& b,
                                        std::size_t radius, std::size_t samples, std::uint64_t seed);

}  // namespace hyperdecay
