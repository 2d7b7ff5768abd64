#include "hyperdecay/branching.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "hyperdecay/random.hpp"

namespace hyperdecay {

namespace {

constexpr std::uint64_t kGeneratorStream = 0x4e;
constexpr std::uint64_t kSampleStream = 0x5c;

using Wide = __int128;

std::int64_t narrow(Wide x) {
    if (x > std::numeric_limits<std::int64_t>::max() || x < -std::numeric_limits<std::int64_t>::max())
        throw std::overflow_error("fraction overflow");
    return static_cast<std::int64_t>(x);
}

Wide wide_gcd(Wide a, Wide b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Wide t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Fraction make_fraction(Wide num, Wide den) {
    if (den == 0) throw std::domain_error("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    Wide g = wide_gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Fraction(narrow(num), narrow(den));
}

std::string strip_comment(const std::string& line) {
    auto hash = line.find('#');
    return hash == std::string::npos ? line : line.substr(0, hash);
}

std::vector<long long> parse_ints(const std::string& line, std::size_t line_no) {
    std::istringstream ss(line);
    std::vector<long long> out;
    std::string tok;
    while (ss >> tok) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size()) throw InputError("line " + std::to_string(line_no) + ": not an integer: " + tok, line_no);
        out.push_back(v);
    }
    return out;
}

struct TypeCounts {
    std::vector<std::size_t> vertices;
    std::vector<std::size_t> edges;
};

std::size_t ceil_times(const Fraction& f, std::size_t n) {
    Wide num = static_cast<Wide>(f.num()) * static_cast<Wide>(n);
    Wide den = f.den();
    return static_cast<std::size_t>((num + den - 1) / den);
}

TypeCounts type_counts(const Reversibility& r, std::size_t n) {
    TypeCounts c;
    for (const auto& x : r.p) c.vertices.push_back(ceil_times(x, n));
    for (const auto& x : r.q) c.edges.push_back(ceil_times(x, n));
    return c;
}

bool counts_consistent(const BranchingMatrices& b, const TypeCounts& c) {
    for (std::size_t s = 0; s < b.tau_v(); ++s)
        for (std::size_t t = 0; t < b.tau_e(); ++t)
            if (b.D[s][t] != 0 &&
                static_cast<std::size_t>(b.D[s][t]) * c.vertices[s] != static_cast<std::size_t>(b.K[t][s]) * c.edges[t])
                return false;
    return true;
}

Reversibility require_reversible(const BranchingMatrices& b) {
    Reversibility r = reversibility(b);
    if (!r.reversible) {
        const auto& w = *r.witness;
        throw NotReversibleError("branching matrices are not reversible: balance fails at vertex type " +
                                     std::to_string(w.i) + ", edge type " + std::to_string(w.j) + " (" +
                                     w.lhs.str() + " vs " + w.rhs.str() + ")",
                                 w);
    }
    return r;
}

void require_valid(const BranchingMatrices& b) {
    if (auto v = validate_branching(b)) throw InputError("invalid branching matrices: " + v->message);
}

// Canonical code of the subtree below vertex u (or edge e).
std::string vertex_code(const TypedNeighborhood& t, std::size_t u);

std::string edge_code(const TypedNeighborhood& t, std::size_t e) {
    std::vector<std::string> parts;
    for (std::size_t v : t.edge_children[e]) parts.push_back(vertex_code(t, v));
    std::sort(parts.begin(), parts.end());
    std::string out = "e" + std::to_string(t.edge_type[e]) + "[";
    for (const auto& p : parts) out += p;
    return out + "]";
}

std::string vertex_code(const TypedNeighborhood& t, std::size_t u) {
    std::vector<std::string> parts;
    for (std::size_t e : t.vertex_children[u]) parts.push_back(edge_code(t, e));
    std::sort(parts.begin(), parts.end());
    std::string out = "v" + std::to_string(t.vertex_type[u]) + "(";
    for (const auto& p : parts) out += p;
    return out + ")";
}

}  // namespace

Fraction::Fraction(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den == 0) throw std::domain_error("zero denominator");
    if (den < 0 || std::gcd(num, den) != 1) {
        Fraction f = make_fraction(num, den);
        num_ = f.num_;
        den_ = f.den_;
    }
}

std::string Fraction::str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

Fraction operator+(const Fraction& a, const Fraction& b) {
    return make_fraction(static_cast<Wide>(a.num_) * b.den_ + static_cast<Wide>(b.num_) * a.den_,
                         static_cast<Wide>(a.den_) * b.den_);
}

Fraction operator-(const Fraction& a, const Fraction& b) {
    return make_fraction(static_cast<Wide>(a.num_) * b.den_ - static_cast<Wide>(b.num_) * a.den_,
                         static_cast<Wide>(a.den_) * b.den_);
}

Fraction operator*(const Fraction& a, const Fraction& b) {
    return make_fraction(static_cast<Wide>(a.num_) * b.num_, static_cast<Wide>(a.den_) * b.den_);
}

Fraction operator/(const Fraction& a, const Fraction& b) {
    return make_fraction(static_cast<Wide>(a.num_) * b.den_, static_cast<Wide>(a.den_) * b.num_);
}

bool operator<(const Fraction& a, const Fraction& b) {
    return static_cast<Wide>(a.num_) * b.den_ < static_cast<Wide>(b.num_) * a.den_;
}

std::optional<BranchingViolation> validate_branching(const BranchingMatrices& b) {
    using Kind = BranchingViolation::Kind;
    auto fail = [](Kind kind, std::size_t row, std::size_t col, std::string msg) {
        return std::optional<BranchingViolation>(BranchingViolation{kind, row, col, std::move(msg)});
    };
    std::size_t tv = b.tau_v(), te = b.tau_e();
    if (b.d < 1 || b.k < 1) return fail(Kind::Shape, 0, 0, "d and k must be at least 1");
    if (tv == 0 || te == 0) return fail(Kind::Shape, 0, 0, "need at least one vertex type and one edge type");
    for (std::size_t i = 0; i < tv; ++i)
        if (b.D[i].size() != te)
            return fail(Kind::Shape, i, 0, "row " + std::to_string(i) + " of D has " + std::to_string(b.D[i].size()) +
                                               " entries, expected " + std::to_string(te));
    for (std::size_t j = 0; j < te; ++j)
        if (b.K[j].size() != tv)
            return fail(Kind::Shape, j, 0, "row " + std::to_string(j) + " of K has " + std::to_string(b.K[j].size()) +
                                               " entries, expected " + std::to_string(tv));
    for (std::size_t i = 0; i < tv; ++i)
        for (std::size_t j = 0; j < te; ++j)
            if (b.D[i][j] < 0)
                return fail(Kind::Negative, i, j, "D[" + std::to_string(i) + "][" + std::to_string(j) + "] is negative");
    for (std::size_t j = 0; j < te; ++j)
        for (std::size_t i = 0; i < tv; ++i)
            if (b.K[j][i] < 0)
                return fail(Kind::Negative, j, i, "K[" + std::to_string(j) + "][" + std::to_string(i) + "] is negative");
    for (std::size_t i = 0; i < tv; ++i) {
        long long sum = std::accumulate(b.D[i].begin(), b.D[i].end(), 0LL);
        if (sum != b.d + 1)
            return fail(Kind::VertexRowSum, i, 0,
                        "row " + std::to_string(i) + " of D sums to " + std::to_string(sum) + ", expected d+1 = " +
                            std::to_string(b.d + 1));
    }
    for (std::size_t j = 0; j < te; ++j) {
        long long sum = std::accumulate(b.K[j].begin(), b.K[j].end(), 0LL);
        if (sum != b.k + 1)
            return fail(Kind::EdgeRowSum, j, 0,
                        "row " + std::to_string(j) + " of K sums to " + std::to_string(sum) + ", expected k+1 = " +
                            std::to_string(b.k + 1));
    }
    for (std::size_t i = 0; i < tv; ++i)
        for (std::size_t j = 0; j < te; ++j)
            if ((b.D[i][j] == 0) != (b.K[j][i] == 0))
                return fail(Kind::Support, i, j,
                            "D[" + std::to_string(i) + "][" + std::to_string(j) + "] and K[" + std::to_string(j) + "][" +
                                std::to_string(i) + "] differ in being zero");
    // Strong connectivity of the (symmetric) bipartite type graph.
    std::vector<char> seen_v(tv, 0), seen_e(te, 0);
    std::vector<std::size_t> stack{0};
    seen_v[0] = 1;
    while (!stack.empty()) {
        std::size_t x = stack.back();
        stack.pop_back();
        if (x < tv) {
            for (std::size_t j = 0; j < te; ++j)
                if (b.D[x][j] != 0 && !seen_e[j]) {
                    seen_e[j] = 1;
                    stack.push_back(tv + j);
                }
        } else {
            std::size_t j = x - tv;
            for (std::size_t i = 0; i < tv; ++i)
                if (b.K[j][i] != 0 && !seen_v[i]) {
                    seen_v[i] = 1;
                    stack.push_back(i);
                }
        }
    }
    for (std::size_t i = 0; i < tv; ++i)
        if (!seen_v[i])
            return fail(Kind::Reducible, i, 0, "DK and KD are reducible: vertex type " + std::to_string(i) +
                                                   " is not reachable from vertex type 0");
    for (std::size_t j = 0; j < te; ++j)
        if (!seen_e[j])
            return fail(Kind::Reducible, j, 1, "DK and KD are reducible: edge type " + std::to_string(j) +
                                                   " is not reachable from vertex type 0");
    return std::nullopt;
}

BranchingMatrices hat_matrices(int d, int k) {
    if (d < 1 || k < 1) throw InputError("d and k must be at least 1");
    return {d, k, {{1, d}, {d, 1}}, {{k, 1}, {1, k}}};
}

BranchingMatrices parse_branching(std::istream& in) {
    std::vector<std::pair<std::size_t, std::vector<long long>>> lines;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto ints = parse_ints(strip_comment(line), line_no);
        if (!ints.empty()) lines.emplace_back(line_no, std::move(ints));
    }
    if (lines.empty()) throw InputError("empty branching-matrix file");
    const auto& head = lines[0].second;
    if (head.size() != 4) throw InputError("header must be \"tau_v tau_e d k\"", lines[0].first);
    auto positive = [&](long long v, const char* what) {
        if (v < 1 || v > 1'000'000) throw InputError(std::string(what) + " must be a positive integer", lines[0].first);
        return v;
    };
    std::size_t tv = static_cast<std::size_t>(positive(head[0], "tau_v"));
    std::size_t te = static_cast<std::size_t>(positive(head[1], "tau_e"));
    BranchingMatrices b;
    b.d = static_cast<int>(positive(head[2], "d"));
    b.k = static_cast<int>(positive(head[3], "k"));
    if (lines.size() != 1 + tv + te)
        throw InputError("expected " + std::to_string(tv + te) + " matrix rows, found " +
                         std::to_string(lines.size() - 1));
    auto row = [&](std::size_t idx, std::size_t width) {
        const auto& [no, vals] = lines[idx];
        if (vals.size() != width)
            throw InputError("line " + std::to_string(no) + ": expected " + std::to_string(width) + " entries", no);
        std::vector<int> out;
        for (long long v : vals) {
            if (v < 0 || v > 1'000'000) throw InputError("line " + std::to_string(no) + ": entry out of range", no);
            out.push_back(static_cast<int>(v));
        }
        return out;
    };
    for (std::size_t i = 0; i < tv; ++i) b.D.push_back(row(1 + i, te));
    for (std::size_t j = 0; j < te; ++j) b.K.push_back(row(1 + tv + j, tv));
    return b;
}

BranchingMatrices read_branching(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return parse_branching(in);
}

void write_branching(std::ostream& out, const BranchingMatrices& b) {
    out << b.tau_v() << ' ' << b.tau_e() << ' ' << b.d << ' ' << b.k << '\n';
    auto rows = [&](const std::vector<std::vector<int>>& m) {
        for (const auto& r : m) {
            for (std::size_t c = 0; c < r.size(); ++c) out << (c ? " " : "") << r[c];
            out << '\n';
        }
    };
    rows(b.D);
    rows(b.K);
}

Reversibility reversibility(const BranchingMatrices& b) {
    require_valid(b);
    std::size_t tv = b.tau_v(), te = b.tau_e();
    Reversibility r;
    r.p.assign(tv, Fraction(0));
    r.q.assign(te, Fraction(0));
    std::vector<char> seen(tv + te, 0);
    std::vector<std::size_t> queue{0};
    queue.reserve(tv + te);
    r.p[0] = Fraction(1);
    seen[0] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        std::size_t x = queue[head];
        if (x < tv) {
            for (std::size_t j = 0; j < te; ++j)
                if (b.D[x][j] != 0 && !seen[tv + j]) {
                    r.q[j] = r.p[x] * Fraction(b.D[x][j], b.K[j][x]);
                    seen[tv + j] = 1;
                    queue.push_back(tv + j);
                }
        } else {
            std::size_t j = x - tv;
            for (std::size_t i = 0; i < tv; ++i)
                if (b.K[j][i] != 0 && !seen[i]) {
                    r.p[i] = r.q[j] * Fraction(b.K[j][i], b.D[i][j]);
                    seen[i] = 1;
                    queue.push_back(i);
                }
        }
    }
    for (std::size_t i = 0; i < tv; ++i)
        for (std::size_t j = 0; j < te; ++j) {
            if (b.D[i][j] == 0) continue;
            Fraction lhs = r.p[i] * Fraction(b.D[i][j]);
            Fraction rhs = r.q[j] * Fraction(b.K[j][i]);
            if (!(lhs == rhs)) {
                r.witness = BalanceWitness{i, j, lhs, rhs};
                return r;
            }
        }
    Fraction sp(0), sq(0);
    for (const auto& x : r.p) sp = sp + x;
    for (const auto& x : r.q) sq = sq + x;
    Fraction total = sp + sq;
    for (auto& x : r.p) x = x / total;
    for (auto& x : r.q) x = x / total;
    // Summing p_i d_ij = q_j k_ji over all pairs gives (d+1)|p| = (k+1)|q|.
    if (!(sp / sq == Fraction(b.k + 1, b.d + 1))) throw std::logic_error("balance solution violates |p|/|q| = (k+1)/(d+1)");
    r.reversible = true;
    return r;
}

StationaryDistributions stationary_distributions(const BranchingMatrices& b) {
    Reversibility r = require_reversible(b);
    Fraction sp(0), sq(0);
    for (const auto& x : r.p) sp = sp + x;
    for (const auto& x : r.q) sq = sq + x;
    StationaryDistributions s;
    for (const auto& x : r.p) s.p.push_back(x / sp);
    for (const auto& x : r.q) s.q.push_back(x / sq);
    // p'D = (k+1)(|q|/|p|) q' and q'K = (d+1)(|p|/|q|) p'.
    for (std::size_t j = 0; j < b.tau_e(); ++j) {
        Fraction acc(0);
        for (std::size_t i = 0; i < b.tau_v(); ++i) acc = acc + s.p[i] * Fraction(b.D[i][j]);
        if (!(acc == Fraction(b.k + 1) * (sq / sp) * s.q[j])) throw std::logic_error("p'D identity fails");
    }
    for (std::size_t i = 0; i < b.tau_v(); ++i) {
        Fraction acc(0);
        for (std::size_t j = 0; j < b.tau_e(); ++j) acc = acc + s.q[j] * Fraction(b.K[j][i]);
        if (!(acc == Fraction(b.d + 1) * (sp / sq) * s.p[i])) throw std::logic_error("q'K identity fails");
    }
    return s;
}

std::vector<double> invariant_marginal_residual(const BranchingMatrices& b, double lambda,
                                                const std::vector<double>& p) {
    require_valid(b);
    if (p.size() != b.tau_v()) throw InputError("need one marginal per vertex type");
    for (double x : p)
        if (!(x >= 0.0 && x < 1.0)) throw std::domain_error("type marginals must lie in [0, 1)");
    std::vector<double> edge_term(b.tau_e());
    for (std::size_t j = 0; j < b.tau_e(); ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < b.tau_v(); ++i) sum += b.K[j][i] * p[i];
        if (!(sum < 1.0)) throw std::domain_error("edge sum of type " + std::to_string(j) + " is not below 1");
        edge_term[j] = 1.0 - sum;
    }
    std::vector<double> out(b.tau_v());
    for (std::size_t s = 0; s < b.tau_v(); ++s) {
        double rhs = lambda / std::pow(1.0 - p[s], b.d);
        for (std::size_t j = 0; j < b.tau_e(); ++j) rhs *= std::pow(edge_term[j], b.D[s][j]);
        out[s] = p[s] - rhs;
    }
    return out;
}

bool is_feasible_size(const BranchingMatrices& b, std::size_t n) {
    Reversibility r = require_reversible(b);
    return n > 0 && counts_consistent(b, type_counts(r, n));
}

std::size_t next_feasible_size(const BranchingMatrices& b, std::size_t n) {
    Reversibility r = require_reversible(b);
    // Every multiple of the common denominator is feasible, so this ends.
    for (std::size_t m = std::max<std::size_t>(n, 1);; ++m)
        if (counts_consistent(b, type_counts(r, m))) return m;
}

io::HypergraphText generate_Hn(const BranchingMatrices& b, std::size_t n, std::uint64_t seed) {
    Reversibility r = require_reversible(b);
    TypeCounts c = type_counts(r, n);
    if (n == 0 || !counts_consistent(b, c)) {
        std::size_t next = next_feasible_size(b, n);
        throw InfeasibleSizeError("n = " + std::to_string(n) + " is not feasible; next feasible n is " +
                                      std::to_string(next),
                                  next);
    }
    std::size_t tv = b.tau_v(), te = b.tau_e();
    std::vector<std::size_t> v_off(tv + 1, 0), e_off(te + 1, 0);
    for (std::size_t s = 0; s < tv; ++s) v_off[s + 1] = v_off[s] + c.vertices[s];
    for (std::size_t t = 0; t < te; ++t) e_off[t + 1] = e_off[t] + c.edges[t];

    io::HypergraphText text;
    text.n = v_off[tv];
    text.edges.resize(e_off[te]);
    for (std::size_t s = 0; s < tv; ++s) text.vertex_types.insert(text.vertex_types.end(), c.vertices[s], static_cast<int>(s));
    for (std::size_t t = 0; t < te; ++t) text.edge_types.insert(text.edge_types.end(), c.edges[t], static_cast<int>(t));

    Rng rng = make_rng(seed, kGeneratorStream);
    std::vector<std::size_t> perm;
    for (std::size_t s = 0; s < tv; ++s)
        for (std::size_t t = 0; t < te; ++t) {
            if (b.D[s][t] == 0) continue;
            // Stub a belongs to vertex a mod |V_s| and is matched to stub f(a),
            // which belongs to edge f(a) mod |E_t|.
            std::size_t stubs = static_cast<std::size_t>(b.D[s][t]) * c.vertices[s];
            perm.resize(stubs);
            std::iota(perm.begin(), perm.end(), std::size_t{0});
            shuffle(perm, rng);
            for (std::size_t a = 0; a < stubs; ++a)
                text.edges[e_off[t] + perm[a] % c.edges[t]].push_back(static_cast<Vertex>(v_off[s] + a % c.vertices[s]));
        }
    for (auto& e : text.edges) std::sort(e.begin(), e.end());
    return text;
}

std::string TypedNeighborhood::canonical() const {
    if (vertex_type.empty()) return "";
    return vertex_code(*this, 0);
}

TypedNeighborhood tree_neighborhood(const BranchingMatrices& b, int root_type, std::size_t radius,
                                    std::size_t max_nodes) {
    require_valid(b);
    if (root_type < 0 || static_cast<std::size_t>(root_type) >= b.tau_v())
        throw InputError("root type " + std::to_string(root_type) + " is out of range");
    TypedNeighborhood t;
    struct Pending {
        std::size_t node;
        int entered;  // edge type used to enter, -1 at the root
        std::size_t depth;
    };
    std::vector<Pending> queue{{0, -1, 0}};
    t.vertex_type.push_back(root_type);
    t.vertex_children.emplace_back();
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Pending cur = queue[head];
        if (cur.depth >= radius) continue;
        int s = t.vertex_type[cur.node];
        for (std::size_t j = 0; j < b.tau_e(); ++j) {
            int edges = b.D[s][j] - (static_cast<int>(j) == cur.entered ? 1 : 0);
            for (int c = 0; c < edges; ++c) {
                std::size_t e = t.edge_type.size();
                t.edge_type.push_back(static_cast<int>(j));
                t.edge_children.emplace_back();
                t.vertex_children[cur.node].push_back(e);
                for (std::size_t i = 0; i < b.tau_v(); ++i) {
                    int members = b.K[j][i] - (static_cast<int>(i) == s ? 1 : 0);
                    for (int m = 0; m < members; ++m) {
                        std::size_t v = t.vertex_type.size();
                        t.vertex_type.push_back(static_cast<int>(i));
                        t.vertex_children.emplace_back();
                        t.edge_children[e].push_back(v);
                        queue.push_back({v, static_cast<int>(j), cur.depth + 1});
                    }
                }
                if (t.num_vertices() + t.num_edges() > max_nodes)
                    throw InputError("tree neighborhood exceeds " + std::to_string(max_nodes) + " nodes");
            }
        }
    }
    return t;
}

LocalConvergence local_convergence_rate(const io::HypergraphText& h, const BranchingMatrices& b,
                                        std::size_t radius, std::size_t samples, std::uint64_t seed) {
    require_valid(b);
    if (h.vertex_types.size() != h.n || h.edge_types.size() != h.edges.size())
        throw InputError("local convergence needs a typed hypergraph");
    for (std::size_t v = 0; v < h.n; ++v)
        if (h.vertex_types[v] < 0 || static_cast<std::size_t>(h.vertex_types[v]) >= b.tau_v())
            throw InputError("vertex " + std::to_string(v) + " has a type outside the branching matrices", v);
    for (std::size_t e = 0; e < h.edges.size(); ++e)
        if (h.edge_types[e] < 0 || static_cast<std::size_t>(h.edge_types[e]) >= b.tau_e())
            throw InputError("edge " + std::to_string(e) + " has a type outside the branching matrices", e);

    std::size_t tv = b.tau_v();
    std::vector<std::string> expected;
    for (std::size_t s = 0; s < tv; ++s) expected.push_back(tree_neighborhood(b, static_cast<int>(s), radius).canonical());

    // One entry per incidence, so a repeated vertex lists the edge twice.
    std::vector<std::vector<std::size_t>> incident(h.n);
    for (std::size_t e = 0; e < h.edges.size(); ++e)
        for (Vertex v : h.edges[e]) {
            if (v >= h.n) throw InputError("edge " + std::to_string(e) + " names a vertex out of range", e);
            incident[v].push_back(e);
        }

    std::vector<std::uint32_t> v_stamp(h.n, 0), e_stamp(h.edges.size(), 0);
    std::vector<std::size_t> dist(h.n, 0), local(h.n, 0);
    std::uint32_t stamp = 0;
    std::vector<Vertex> ball_v;
    std::vector<std::size_t> ball_e;

    auto matches = [&](Vertex root) {
        ++stamp;
        ball_v.assign(1, root);
        ball_e.clear();
        v_stamp[root] = stamp;
        dist[root] = 0;
        for (std::size_t head = 0; head < ball_v.size(); ++head) {
            Vertex u = ball_v[head];
            if (dist[u] >= radius) continue;
            for (std::size_t e : incident[u]) {
                if (e_stamp[e] == stamp) continue;
                e_stamp[e] = stamp;
                ball_e.push_back(e);
                for (Vertex w : h.edges[e])
                    if (v_stamp[w] != stamp) {
                        v_stamp[w] = stamp;
                        dist[w] = dist[u] + 1;
                        ball_v.push_back(w);
                    }
            }
        }
        std::size_t incidences = 0;
        for (std::size_t e : ball_e) incidences += h.edges[e].size();
        if (ball_v.size() + ball_e.size() - 1 != incidences) return false;

        // A hypertree: rebuild it rooted at `root` and compare codes.
        TypedNeighborhood t;
        for (std::size_t idx = 0; idx < ball_v.size(); ++idx) local[ball_v[idx]] = idx;
        t.vertex_type.resize(ball_v.size());
        t.vertex_children.resize(ball_v.size());
        std::vector<std::size_t> parent_edge(ball_v.size(), std::numeric_limits<std::size_t>::max());
        for (std::size_t idx = 0; idx < ball_v.size(); ++idx) {
            Vertex u = ball_v[idx];
            t.vertex_type[idx] = h.vertex_types[u];
            for (std::size_t e : incident[u]) {
                if (e_stamp[e] != stamp || e == parent_edge[idx]) continue;
                std::size_t ei = t.edge_type.size();
                t.edge_type.push_back(h.edge_types[e]);
                t.edge_children.emplace_back();
                t.vertex_children[idx].push_back(ei);
                for (Vertex w : h.edges[e])
                    if (w != u) {
                        t.edge_children[ei].push_back(local[w]);
                        parent_edge[local[w]] = e;
                    }
            }
        }
        return t.canonical() == expected[static_cast<std::size_t>(h.vertex_types[root])];
    };

    LocalConvergence out;
    out.sampled.assign(tv, 0);
    out.matched.assign(tv, 0);
    auto record = [&](Vertex v) {
        std::size_t s = static_cast<std::size_t>(h.vertex_types[v]);
        ++out.sampled[s];
        if (matches(v)) ++out.matched[s];
    };
    if (samples == 0) {
        for (Vertex v = 0; v < h.n; ++v) record(v);
    } else if (h.n > 0) {
        Rng rng = make_rng(seed, kSampleStream);
        for (std::size_t i = 0; i < samples; ++i) record(static_cast<Vertex>(uniform_below(rng, h.n)));
    }
    for (std::size_t s = 0; s < tv; ++s)
        out.fraction.push_back(out.sampled[s] == 0 ? std::numeric_limits<double>::quiet_NaN()
                                                   : static_cast<double>(out.matched[s]) / out.sampled[s]);
    return out;
}

}  // namespace hyperdecay
