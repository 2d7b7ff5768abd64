#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "branching_oracle.hpp"
#include "hyperdecay/branching.hpp"
#include "hyperdecay/decay.hpp"
#include "hyperdecay/exact.hpp"
#include "hyperdecay/random.hpp"

using namespace hyperdecay;
using testsupport::balance_solvable;
using testsupport::bareiss_rank;

namespace {

BranchingMatrices single_type(int d, int k) { return {d, k, {{d + 1}}, {{k + 1}}}; }

BranchingMatrices uniform_pair() { return {2, 2, {{2, 1}, {1, 2}}, {{2, 1}, {1, 2}}}; }

// Random composition of `sum` into `parts` positive integers.
std::vector<int> composition(Rng& rng, int sum, int parts) {
    std::vector<int> cuts;
    std::vector<int> pool;
    for (int c = 1; c < sum; ++c) pool.push_back(c);
    shuffle(pool, rng);
    cuts.assign(pool.begin(), pool.begin() + (parts - 1));
    std::sort(cuts.begin(), cuts.end());
    std::vector<int> out;
    int last = 0;
    for (int c : cuts) {
        out.push_back(c - last);
        last = c;
    }
    out.push_back(sum - last);
    return out;
}

// Random valid branching matrices with up to max_tau types of each kind.
BranchingMatrices random_valid(Rng& rng, std::size_t max_tau) {
    for (;;) {
        std::size_t tv = 1 + uniform_below(rng, max_tau), te = 1 + uniform_below(rng, max_tau);
        std::vector<std::vector<int>> support(tv, std::vector<int>(te, 0));
        for (auto& row : support)
            for (auto& c : row) c = uniform_unit(rng) < 0.6;
        std::size_t max_row = 0, max_col = 0;
        for (std::size_t i = 0; i < tv; ++i) {
            std::size_t r = 0;
            for (std::size_t j = 0; j < te; ++j) r += support[i][j];
            max_row = std::max(max_row, r);
        }
        for (std::size_t j = 0; j < te; ++j) {
            std::size_t c = 0;
            for (std::size_t i = 0; i < tv; ++i) c += support[i][j];
            max_col = std::max(max_col, c);
        }
        int d1 = static_cast<int>(std::max<std::size_t>(max_row, 2) + uniform_below(rng, 4));
        int k1 = static_cast<int>(std::max<std::size_t>(max_col, 2) + uniform_below(rng, 4));
        BranchingMatrices b{d1 - 1, k1 - 1, std::vector<std::vector<int>>(tv, std::vector<int>(te, 0)),
                            std::vector<std::vector<int>>(te, std::vector<int>(tv, 0))};
        bool empty_line = false;
        for (std::size_t i = 0; i < tv; ++i) {
            std::vector<std::size_t> cols;
            for (std::size_t j = 0; j < te; ++j)
                if (support[i][j]) cols.push_back(j);
            if (cols.empty()) empty_line = true;
            if (empty_line) break;
            auto parts = composition(rng, d1, static_cast<int>(cols.size()));
            for (std::size_t c = 0; c < cols.size(); ++c) b.D[i][cols[c]] = parts[c];
        }
        for (std::size_t j = 0; j < te && !empty_line; ++j) {
            std::vector<std::size_t> rows;
            for (std::size_t i = 0; i < tv; ++i)
                if (support[i][j]) rows.push_back(i);
            if (rows.empty()) empty_line = true;
            if (empty_line) break;
            auto parts = composition(rng, k1, static_cast<int>(rows.size()));
            for (std::size_t c = 0; c < rows.size(); ++c) b.K[j][rows[c]] = parts[c];
        }
        if (!empty_line && !validate_branching(b)) return b;
    }
}

// Rank over the rationals by plain Gaussian elimination.
int rational_rank(std::vector<std::vector<long long>> m) {
    std::vector<std::vector<Rational>> a;
    for (const auto& row : m) a.emplace_back(row.begin(), row.end());
    int rows = static_cast<int>(a.size()), cols = rows ? static_cast<int>(a[0].size()) : 0, rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int p = rank;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[rank]);
        for (int r = 0; r < rows; ++r) {
            if (r == rank || a[r][c] == 0) continue;
            Rational f = a[r][c] / a[rank][c];
            for (int cc = c; cc < cols; ++cc) a[r][cc] -= f * a[rank][cc];
        }
        ++rank;
    }
    return rank;
}

}  // namespace

TEST_CASE("fractions") {
    CHECK(Fraction(6, -4) == Fraction(-3, 2));
    CHECK((Fraction(1, 3) + Fraction(1, 6)) == Fraction(1, 2));
    CHECK((Fraction(1, 3) - Fraction(1, 2)) == Fraction(-1, 6));
    CHECK((Fraction(2, 3) * Fraction(9, 4)) == Fraction(3, 2));
    CHECK((Fraction(2, 3) / Fraction(4, 9)) == Fraction(3, 2));
    CHECK(Fraction(1, 3) < Fraction(1, 2));
    CHECK(Fraction(7, 2).str() == "7/2");
    CHECK(Fraction(4, 2).str() == "2");
    Fraction big(std::int64_t{1} << 62);
    CHECK_THROWS_AS(big * big, std::overflow_error);
    CHECK_THROWS_AS(Fraction(1, 0), std::domain_error);
}

TEST_CASE("validation examples") {
    CHECK(!validate_branching(hat_matrices(2, 2)));
    CHECK(!validate_branching(single_type(2, 2)));

    BranchingMatrices uneven{2, 2, {{2, 0}, {0, 3}}, {{3, 0}, {0, 3}}};
    auto v = validate_branching(uneven);
    REQUIRE(v);
    CHECK(v->kind == BranchingViolation::Kind::VertexRowSum);
    CHECK(v->row == 0);

    BranchingMatrices split{2, 2, {{3, 0}, {0, 3}}, {{3, 0}, {0, 3}}};
    v = validate_branching(split);
    REQUIRE(v);
    CHECK(v->kind == BranchingViolation::Kind::Reducible);
    CHECK(v->row == 1);

    BranchingMatrices mismatch{2, 2, {{2, 1}, {1, 2}}, {{3, 0}, {1, 2}}};
    v = validate_branching(mismatch);
    REQUIRE(v);
    CHECK(v->kind == BranchingViolation::Kind::Support);
    CHECK(v->row == 1);
    CHECK(v->col == 0);

    BranchingMatrices edge_sum{2, 2, {{3}}, {{2}}};
    v = validate_branching(edge_sum);
    REQUIRE(v);
    CHECK(v->kind == BranchingViolation::Kind::EdgeRowSum);

    BranchingMatrices ragged{2, 2, {{3, 0}}, {{3}}};
    v = validate_branching(ragged);
    REQUIRE(v);
    CHECK(v->kind == BranchingViolation::Kind::Shape);
}

TEST_CASE("hat matrices") {
    auto h = hat_matrices(1, 1);
    CHECK(h.D == std::vector<std::vector<int>>{{1, 1}, {1, 1}});
    CHECK(h.K == std::vector<std::vector<int>>{{1, 1}, {1, 1}});
    auto h2 = hat_matrices(2, 2);
    CHECK(h2.D == std::vector<std::vector<int>>{{1, 2}, {2, 1}});
    CHECK(h2.K == std::vector<std::vector<int>>{{2, 1}, {1, 2}});
    for (int d = 1; d <= 6; ++d)
        for (int k = 1; k <= 6; ++k) {
            REQUIRE(!validate_branching(hat_matrices(d, k)));
            auto r = reversibility(hat_matrices(d, k));
            REQUIRE(r.reversible == (d * k == 1));
            if (!r.reversible) REQUIRE(r.witness);
        }
    CHECK_THROWS_AS(hat_matrices(0, 2), InputError);
}

TEST_CASE("branching file round trip") {
    std::istringstream in("# hat\n2 2 2 2\n1 2\n2 1  # row 1\n\n2 1\n1 2\n");
    auto b = parse_branching(in);
    CHECK(b.D == hat_matrices(2, 2).D);
    CHECK(b.K == hat_matrices(2, 2).K);
    std::ostringstream out;
    write_branching(out, b);
    std::istringstream again(out.str());
    auto c = parse_branching(again);
    CHECK(c.D == b.D);
    CHECK(c.K == b.K);
    CHECK(c.d == 2);

    std::istringstream short_rows("1 1 2 2\n3\n");
    CHECK_THROWS_AS(parse_branching(short_rows), InputError);
    std::istringstream bad_token("1 1 2 2\n3\nx\n");
    CHECK_THROWS_AS(parse_branching(bad_token), InputError);
    std::istringstream wide("1 1 2 2\n3 0\n3\n");
    CHECK_THROWS_AS(parse_branching(wide), InputError);
}

TEST_CASE("reversibility examples") {
    for (int d = 1; d <= 5; ++d)
        for (int k = 1; k <= 5; ++k) {
            auto r = reversibility(single_type(d, k));
            REQUIRE(r.reversible);
            REQUIRE(r.p[0] / r.q[0] == Fraction(k + 1, d + 1));
            REQUIRE(r.p[0] + r.q[0] == Fraction(1));
        }
    auto hat = reversibility(hat_matrices(2, 2));
    CHECK(!hat.reversible);

    auto u = reversibility(uniform_pair());
    REQUIRE(u.reversible);
    for (const auto& x : u.p) CHECK(x == Fraction(1, 4));
    for (const auto& x : u.q) CHECK(x == Fraction(1, 4));

    BranchingMatrices invalid{2, 2, {{2, 0}, {0, 3}}, {{3, 0}, {0, 3}}};
    CHECK_THROWS_AS(reversibility(invalid), InputError);
}

TEST_CASE("Bareiss rank agrees with rational elimination") {
    Rng rng = make_rng(3);
    for (int trial = 0; trial < 400; ++trial) {
        std::size_t rows = 1 + uniform_below(rng, 9), cols = 1 + uniform_below(rng, 6);
        std::vector<std::vector<long long>> m(rows, std::vector<long long>(cols));
        for (auto& r : m)
            for (auto& x : r) x = uniform_unit(rng) < 0.4 ? 0 : static_cast<long long>(uniform_below(rng, 13)) - 6;
        REQUIRE(bareiss_rank(m) == rational_rank(m));
    }
}

TEST_CASE("reversibility agrees with the rank oracle on random matrices") {
    Rng rng = make_rng(12);
    int reversible = 0;
    for (int trial = 0; trial < 3000; ++trial) {
        auto b = random_valid(rng, 4);
        auto r = reversibility(b);
        REQUIRE(r.reversible == balance_solvable(b));
        if (!r.reversible) {
            const auto& w = *r.witness;
            REQUIRE(b.D[w.i][w.j] != 0);
            REQUIRE(!(w.lhs == w.rhs));
            continue;
        }
        ++reversible;
        Fraction sp(0), sq(0);
        for (std::size_t i = 0; i < b.tau_v(); ++i) {
            REQUIRE(Fraction(0) < r.p[i]);
            sp = sp + r.p[i];
            for (std::size_t j = 0; j < b.tau_e(); ++j)
                REQUIRE(r.p[i] * Fraction(b.D[i][j]) == r.q[j] * Fraction(b.K[j][i]));
        }
        for (const auto& x : r.q) sq = sq + x;
        REQUIRE(sp + sq == Fraction(1));
        REQUIRE(sp / sq == Fraction(b.k + 1, b.d + 1));
    }
    CHECK(reversible > 50);
}

TEST_CASE("stationary distributions") {
    auto s = stationary_distributions(single_type(3, 2));
    CHECK(s.p == std::vector<Fraction>{Fraction(1)});
    CHECK(s.q == std::vector<Fraction>{Fraction(1)});
    auto u = stationary_distributions(uniform_pair());
    CHECK(u.p == std::vector<Fraction>{Fraction(1, 2), Fraction(1, 2)});
    CHECK(u.q == std::vector<Fraction>{Fraction(1, 2), Fraction(1, 2)});
    CHECK_THROWS_AS(stationary_distributions(hat_matrices(2, 3)), NotReversibleError);

    // The balance vector p is a left eigenvector of DK with eigenvalue (d+1)(k+1).
    Rng rng = make_rng(77);
    int checked = 0;
    while (checked < 100) {
        auto b = random_valid(rng, 4);
        auto r = reversibility(b);
        if (!r.reversible) continue;
        for (std::size_t s2 = 0; s2 < b.tau_v(); ++s2) {
            Fraction acc(0);
            for (std::size_t i = 0; i < b.tau_v(); ++i)
                for (std::size_t j = 0; j < b.tau_e(); ++j) acc = acc + r.p[i] * Fraction(b.D[i][j] * b.K[j][s2]);
            REQUIRE(acc == Fraction((b.d + 1) * (b.k + 1)) * r.p[s2]);
        }
        auto st = stationary_distributions(b);
        Fraction total(0);
        for (const auto& x : st.p) total = total + x;
        REQUIRE(total == Fraction(1));
        ++checked;
    }
}

TEST_CASE("invariant marginal residual") {
    auto res = invariant_marginal_residual(hat_matrices(2, 3), 0.0, {0.0, 0.0});
    CHECK(res[0] == 0.0);
    CHECK(res[1] == 0.0);
    res = invariant_marginal_residual(hat_matrices(2, 3), 1e-300, {0.0, 0.0});
    CHECK(std::abs(res[0]) <= 1e-300);

    // Single type: bisection on the one-dimensional equation, cross-checked
    // against the fixed point x^ through x = k p / (1 - (k+1) p).
    for (int d = 1; d <= 4; ++d)
        for (int k = 1; k <= 4; ++k)
            for (double lambda : {0.1, 0.5, 1.0, 3.0}) {
                auto b = single_type(d, k);
                double lo = 0.0, hi = 1.0 / (k + 1);
                for (int it = 0; it < 200; ++it) {
                    double mid = 0.5 * (lo + hi);
                    if (invariant_marginal_residual(b, lambda, {mid})[0] < 0.0)
                        lo = mid;
                    else
                        hi = mid;
                }
                double p = 0.5 * (lo + hi);
                REQUIRE(std::abs(invariant_marginal_residual(b, lambda, {p})[0]) <= 1e-10);
                double x = fixed_point(d, k, lambda);
                REQUIRE(p == doctest::Approx(x / (k + (k + 1) * x)).epsilon(1e-9));
            }

    // Hat matrices: two-periodic points of f map back to zero-residual pairs.
    for (auto [d, k, lambda] : {std::tuple{2, 4, 2.0}, std::tuple{3, 2, 2.0}, std::tuple{2, 4, 0.5}}) {
        auto roots = two_periodic_points(d, k, lambda);
        double xs[2] = {roots.back(), roots.front()};
        for (int swap = 0; swap < 2; ++swap) {
            double x = xs[swap], y = xs[1 - swap];
            // k (1+x) p+ + x p- = x and y p+ + k (1+y) p- = y.
            double a11 = k * (1 + x), a12 = x, a21 = y, a22 = k * (1 + y);
            double det = a11 * a22 - a12 * a21;
            double pp = (x * a22 - a12 * y) / det;
            double pm = (a11 * y - a21 * x) / det;
            auto r = invariant_marginal_residual(hat_matrices(d, k), lambda, {pp, pm});
            REQUIRE(std::abs(r[0]) <= 1e-10);
            REQUIRE(std::abs(r[1]) <= 1e-10);
        }
    }

    CHECK_THROWS_AS(invariant_marginal_residual(single_type(2, 2), 1.0, {0.4}), std::domain_error);
    CHECK_THROWS_AS(invariant_marginal_residual(single_type(2, 2), 1.0, {-0.1}), std::domain_error);
    CHECK_THROWS_AS(invariant_marginal_residual(hat_matrices(2, 2), 1.0, {0.1}), InputError);
}

namespace {

// Incidences of each vertex into each edge type, and of each edge from each vertex type.
void check_incidence_counts(const BranchingMatrices& b, const io::HypergraphText& h) {
    std::vector<std::vector<int>> v_to_t(h.n, std::vector<int>(b.tau_e(), 0));
    for (std::size_t e = 0; e < h.edges.size(); ++e) {
        std::vector<int> by_type(b.tau_v(), 0);
        for (Vertex v : h.edges[e]) {
            ++v_to_t[v][static_cast<std::size_t>(h.edge_types[e])];
            ++by_type[static_cast<std::size_t>(h.vertex_types[v])];
        }
        REQUIRE(by_type == b.K[static_cast<std::size_t>(h.edge_types[e])]);
    }
    for (std::size_t v = 0; v < h.n; ++v) REQUIRE(v_to_t[v] == b.D[static_cast<std::size_t>(h.vertex_types[v])]);
}

}  // namespace

TEST_CASE("generator") {
    auto b = single_type(2, 2);
    auto h = generate_Hn(b, 300, 1);
    REQUIRE(h.n == 150);
    REQUIRE(h.edges.size() == 150);
    for (const auto& e : h.edges) REQUIRE(e.size() == 3);
    check_incidence_counts(b, h);

    auto u = uniform_pair();
    auto hu = generate_Hn(u, 40, 5);
    check_incidence_counts(u, hu);
    auto r = reversibility(u);
    std::vector<std::size_t> nv(2, 0), ne(2, 0);
    for (int t : hu.vertex_types) ++nv[static_cast<std::size_t>(t)];
    for (int t : hu.edge_types) ++ne[static_cast<std::size_t>(t)];
    for (std::size_t s = 0; s < 2; ++s) {
        REQUIRE(nv[s] == static_cast<std::size_t>(std::ceil(r.p[s].to_double() * 40)));
        for (std::size_t t = 0; t < 2; ++t)
            REQUIRE(static_cast<std::size_t>(u.D[s][t]) * nv[s] == static_cast<std::size_t>(u.K[t][s]) * ne[t]);
    }

    Rng rng = make_rng(8);
    int built = 0;
    while (built < 40) {
        auto rb = random_valid(rng, 3);
        if (!reversibility(rb).reversible) continue;
        std::size_t n = next_feasible_size(rb, 20 + uniform_below(rng, 60));
        REQUIRE(is_feasible_size(rb, n));
        check_incidence_counts(rb, generate_Hn(rb, n, built));
        ++built;
    }

    auto again = generate_Hn(b, 300, 1);
    CHECK(again.edges == h.edges);
    CHECK(generate_Hn(b, 300, 2).edges != h.edges);

    CHECK_THROWS_AS(generate_Hn(hat_matrices(2, 2), 100, 0), NotReversibleError);

    // D = [[2]], K = [[3]]: p = 3/5, q = 2/5; n = 6 gives 4 vertices, 3 edges.
    BranchingMatrices odd{1, 2, {{2}}, {{3}}};
    CHECK(is_feasible_size(odd, 5));
    CHECK(!is_feasible_size(odd, 6));
    CHECK(next_feasible_size(odd, 6) == 9);
    try {
        generate_Hn(odd, 6, 0);
        FAIL("expected an infeasible-size error");
    } catch (const InfeasibleSizeError& e) {
        CHECK(e.next_feasible == 9);
    }
}

TEST_CASE("tree neighborhoods") {
    auto b = single_type(2, 3);
    auto t0 = tree_neighborhood(b, 0, 0);
    CHECK(t0.num_vertices() == 1);
    CHECK(t0.num_edges() == 0);

    auto t1 = tree_neighborhood(b, 0, 1);
    CHECK(t1.vertex_children[0].size() == 3);
    for (std::size_t e : t1.vertex_children[0]) CHECK(t1.edge_children[e].size() == 3);
    auto t2 = tree_neighborhood(b, 0, 2);
    CHECK(t2.num_vertices() == 1 + 3 * 3 + 3 * 3 * 2 * 3);

    // Hat (d, k) = (2, 3) from a '+' root: one '+' edge holding k-1 '+' and
    // one '-' co-vertex, and d '-' edges holding k '-' co-vertices each.
    auto hat = hat_matrices(2, 3);
    auto th = tree_neighborhood(hat, 0, 1);
    int plus_edges = 0, minus_edges = 0;
    for (std::size_t e : th.vertex_children[0]) {
        std::vector<int> types(2, 0);
        for (std::size_t v : th.edge_children[e]) ++types[static_cast<std::size_t>(th.vertex_type[v])];
        if (th.edge_type[e] == 0) {
            ++plus_edges;
            CHECK(types == std::vector<int>{2, 1});
        } else {
            ++minus_edges;
            CHECK(types == std::vector<int>{0, 3});
        }
    }
    CHECK(plus_edges == 1);
    CHECK(minus_edges == 2);

    // Canonical codes ignore child order but see types.
    auto shuffled = th;
    std::reverse(shuffled.vertex_children[0].begin(), shuffled.vertex_children[0].end());
    for (auto& c : shuffled.edge_children) std::reverse(c.begin(), c.end());
    CHECK(shuffled.canonical() == th.canonical());
    CHECK(tree_neighborhood(hat, 1, 1).canonical() != th.canonical());
    CHECK(tree_neighborhood(hat, 0, 2).canonical() != th.canonical());

    CHECK_THROWS_AS(tree_neighborhood(b, 1, 1), InputError);
    CHECK_THROWS_AS(tree_neighborhood(b, 0, 30, 1000), InputError);
}

TEST_CASE("local convergence tester") {
    // Cycles are 2-regular graphs: D = [[2]], K = [[2]].
    BranchingMatrices cyc{1, 1, {{2}}, {{2}}};
    auto cycle = [](std::size_t n) {
        io::HypergraphText h;
        h.n = n;
        for (std::size_t v = 0; v < n; ++v) h.edges.push_back({static_cast<Vertex>(v), static_cast<Vertex>((v + 1) % n)});
        h.vertex_types.assign(n, 0);
        h.edge_types.assign(n, 0);
        return h;
    };
    CHECK(local_convergence_rate(cycle(5), cyc, 0, 0, 0).fraction[0] == 1.0);
    CHECK(local_convergence_rate(cycle(5), cyc, 2, 0, 0).fraction[0] == 1.0);
    CHECK(local_convergence_rate(cycle(5), cyc, 3, 0, 0).fraction[0] == 0.0);
    CHECK(local_convergence_rate(cycle(3), cyc, 1, 0, 0).fraction[0] == 1.0);
    CHECK(local_convergence_rate(cycle(3), cyc, 2, 0, 0).fraction[0] == 0.0);

    io::HypergraphText loops;
    loops.n = 2;
    loops.edges = {{0, 0}, {1, 1}};
    loops.vertex_types = {0, 0};
    loops.edge_types = {0, 0};
    CHECK(local_convergence_rate(loops, cyc, 1, 0, 0).fraction[0] == 0.0);

    // Sampling with replacement is reproducible.
    auto b = single_type(2, 2);
    auto h = generate_Hn(b, 2000, 4);
    auto a1 = local_convergence_rate(h, b, 2, 300, 9);
    auto a2 = local_convergence_rate(h, b, 2, 300, 9);
    CHECK(a1.sampled[0] == 300);
    CHECK(a1.matched == a2.matched);
    CHECK(local_convergence_rate(h, b, 0, 50, 1).fraction[0] == 1.0);

    // Wrong-type degrees do not match the expansion.
    BranchingMatrices other{2, 1, {{3}}, {{2}}};
    CHECK(local_convergence_rate(h, other, 1, 0, 0).fraction[0] == 0.0);

    auto hat = hat_matrices(2, 2);
    auto bad = h;
    bad.vertex_types[0] = 5;
    CHECK_THROWS_AS(local_convergence_rate(bad, b, 1, 0, 0), InputError);
    io::HypergraphText untyped = cycle(4);
    untyped.vertex_types.clear();
    CHECK_THROWS_AS(local_convergence_rate(untyped, cyc, 1, 0, 0), InputError);
    auto unsampled = local_convergence_rate(cycle(4), hat, 0, 0, 0);
    CHECK(unsampled.sampled[1] == 0);
    CHECK(std::isnan(unsampled.fraction[1]));
}
