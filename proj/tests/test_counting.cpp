#include <doctest.h>

#include <cmath>

#include "hyperdecay/counting.hpp"
#include "hyperdecay/decay.hpp"
#include "hyperdecay/exact.hpp"
#include "support.hpp"

using namespace hyperdecay;
using testsupport::matching_partition;
using testsupport::random_bounded_hypergraph;
using testsupport::random_hypergraph;

TEST_CASE("regime classification") {
    CHECK(classify_regime(2, 4, 1.0) == Regime::CriticalPTAS);
    CHECK(classify_regime(2, 4, 0.5) == Regime::FPTAS);
    CHECK(classify_regime(2, 4, 1.5) == Regime::Gap);
    CHECK(hardness_threshold(2, 4) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(classify_regime(2, 4, 2.5) == Regime::Hard);
    CHECK(classify_regime(2, 1, 5.0) == Regime::Hard);
    CHECK(hardness_threshold(2, 1) == 4.0);
    CHECK(classify_regime(1, 9, 1e6) == Regime::FPTAS);
}

TEST_CASE("small fixed instances") {
    Hypergraph edge(3, {{0, 1, 2}});
    auto r = approx_partition(edge, 0.5, 0.05);
    CHECK(r.estimate >= 0.95 * 2.5);
    CHECK(r.estimate <= 1.05 * 2.5);

    Hypergraph empty;
    auto e = approx_partition(empty, 0.7, 0.1);
    CHECK(e.estimate == 1.0);
    CHECK(e.certified_error == 0.0);
    auto le = approx_log_partition(empty, 0.7, 0.1);
    CHECK(le.estimate == 0.0);
}

TEST_CASE("any small hypergraph at lambda = 0.5, eps = 0.01") {
    Rng rng = make_rng(404);
    for (int trial = 0; trial < 40; ++trial) {
        Hypergraph h = random_hypergraph(rng, 1 + uniform_below(rng, 10), uniform_below(rng, 10), 1, 4);
        double z = exact_partition(h, ActivityVector(0.5)).z;
        auto r = approx_partition(h, 0.5, 0.01);
        REQUIRE(r.budget_met);
        REQUIRE(std::abs(r.estimate / z - 1.0) <= 0.01);
    }
}

TEST_CASE("telescoping product is exact for every order") {
    Rng rng = make_rng(9);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t n = 1 + uniform_below(rng, 7);
        Hypergraph h = random_hypergraph(rng, n, uniform_below(rng, 7), 2, 3);
        Rational lambda = Rational(1 + uniform_below(rng, 7), 1 + uniform_below(rng, 4));
        Rational z = exact_partition_rational(h, lambda).z;
        std::vector<Vertex> order(n);
        for (Vertex v = 0; v < n; ++v) order[v] = v;
        for (int rep = 0; rep < 4; ++rep) {
            testsupport::shuffle(order, rng);
            Rational product = 1;
            Pinning pin;
            for (Vertex v : order) {
                auto res = exact_partition_rational(h, lambda, {}, pin);
                product *= 1 - res.marginals[v];
                pin.pin(v, Spin::Unoccupied);
            }
            REQUIRE(product * z == 1);
        }
    }
}

TEST_CASE("larger eps never needs more depth") {
    Rng rng = make_rng(15);
    for (int trial = 0; trial < 20; ++trial) {
        Hypergraph h = random_bounded_hypergraph(rng, 10, 8, 3, 3);
        auto p = derived_params(h);
        double lambda = 0.5 * critical_activity(p.d, p.k);
        if (std::isinf(lambda)) lambda = 1.0;
        std::size_t prev = std::numeric_limits<std::size_t>::max();
        for (double eps : {0.001, 0.01, 0.05, 0.1, 0.3}) {
            auto r = approx_partition(h, lambda, eps);
            REQUIRE(r.depth_used <= prev);
            prev = r.depth_used;
        }
    }
}

TEST_CASE("duality: independent sets of H are matchings of the dual") {
    Rng rng = make_rng(21);
    for (int trial = 0; trial < 30; ++trial) {
        Hypergraph h = random_bounded_hypergraph(rng, 2 + uniform_below(rng, 9), 1 + uniform_below(rng, 8), 3, 4);
        auto p = derived_params(h);
        double lambda = std::min(1.0, 0.8 * critical_activity(p.d, p.k));
        double eps = 0.05;
        double zm = matching_partition(dualize(h), lambda);
        double z = exact_partition(h, ActivityVector(lambda)).z;
        REQUIRE(std::abs(zm - z) <= 1e-9 * z);
        auto r = approx_partition(h, lambda, eps);
        REQUIRE(std::abs(r.estimate / zm - 1.0) <= 2 * eps);
    }
}

TEST_CASE("depth selection growth") {
    // Subcritical: halving eps adds about ln 2 / kappa levels.
    double lambda = 0.5;
    double kappa = -std::log(contraction_ratio(2, 4, lambda));
    auto t1 = *depth_for_error(2, 4, lambda, 1e-3, 100);
    auto t2 = *depth_for_error(2, 4, lambda, 5e-4, 100);
    CHECK(std::abs(double(t2) - double(t1) - std::log(2.0) / kappa) <= 1.0);
    // and grows like log(n / eps) / kappa.
    auto t3 = *depth_for_error(2, 4, lambda, 1e-3, 100000);
    CHECK(std::abs(double(t3) - double(t1) - std::log(1000.0) / kappa) <= 1.0);

    // Critical: t - l0 scales with the inverse square of the budget.
    auto c = critical_constants(2, 4, 1.0);
    auto budget = [](double eps) { return eps / (4.0 * std::log(1.0 / eps)); };
    double a = double(*depth_for_budget(2, 4, 1.0, budget(0.01)) - c.l0);
    double b = double(*depth_for_budget(2, 4, 1.0, budget(0.005)) - c.l0);
    double expected = std::pow((std::log(200.0) / 0.005) / (std::log(100.0) / 0.01), 2);
    CHECK(b / a == doctest::Approx(expected).epsilon(1e-6));

    CHECK(!depth_for_error(2, 4, 2.0, 0.1, 10));
}

TEST_CASE("eps-soundness below the threshold") {
    Rng rng = make_rng(777);
    int instances = 0;
    for (int trial = 0; trial < 220; ++trial) {
        std::size_t n = 2 + uniform_below(rng, 11);
        std::size_t max_deg = 2 + uniform_below(rng, 2);
        std::size_t max_size = 2 + uniform_below(rng, 3);
        Hypergraph h = random_bounded_hypergraph(rng, n, 1 + uniform_below(rng, 10), max_deg, max_size);
        auto p = derived_params(h);
        double lc = critical_activity(p.d, p.k);
        double lambda = (std::isinf(lc) ? 4.0 : lc) * (0.05 + 0.9 * uniform_unit(rng));
        double z = exact_partition(h, ActivityVector(lambda)).z;
        for (double eps : {0.1, 0.01}) {
            auto r = approx_partition(h, lambda, eps);
            REQUIRE(r.regime == Regime::FPTAS);
            REQUIRE(r.budget_met);
            REQUIRE(r.certified_error <= eps);
            REQUIRE(std::abs(r.estimate / z - 1.0) <= eps);
        }
        ++instances;
    }
    CHECK(instances >= 200);
}

TEST_CASE("log-partition at criticality") {
    Rng rng = make_rng(31);
    int checked = 0;
    while (checked < 40) {
        Hypergraph h = random_bounded_hypergraph(rng, 6 + uniform_below(rng, 5), 6, 3, 5);
        auto s = h.stats();
        if (s.d != 2 || s.k != 4) continue;
        double logz = std::log(exact_partition(h, ActivityVector(1.0)).z);
        auto r = approx_log_partition(h, 1.0, 0.1);
        REQUIRE(r.regime == Regime::CriticalPTAS);
        REQUIRE(r.budget_met);
        REQUIRE(std::abs(r.estimate / logz - 1.0) <= 0.1);
        ++checked;
    }
}

TEST_CASE("log and plain estimates agree below the threshold") {
    Rng rng = make_rng(55);
    for (int trial = 0; trial < 30; ++trial) {
        Hypergraph h = random_bounded_hypergraph(rng, 8, 6, 3, 3);
        auto p = derived_params(h);
        double lambda = std::min(2.0, 0.5 * critical_activity(p.d, p.k));
        auto a = approx_partition(h, lambda, 0.05);
        auto b = approx_log_partition(h, lambda, 0.05);
        // |log Zhat - log Z| <= -log(1 - 0.05) and |b - log Z| <= 0.05 log Z.
        REQUIRE(std::abs(std::log(a.estimate) - b.estimate) <= -std::log(0.95) + 0.05 * b.estimate / 0.95);
    }
}

TEST_CASE("min-degree order and thread count") {
    Rng rng = make_rng(66);
    for (int trial = 0; trial < 15; ++trial) {
        Hypergraph h = random_bounded_hypergraph(rng, 10, 9, 3, 3);
        auto p = derived_params(h);
        double lambda = std::min(2.0, 0.6 * critical_activity(p.d, p.k));
        double z = exact_partition(h, ActivityVector(lambda)).z;
        CountOptions mindeg;
        mindeg.order = VertexOrder::MinDegree;
        auto order = elimination_order(h, VertexOrder::MinDegree);
        std::vector<Vertex> sorted = order;
        std::sort(sorted.begin(), sorted.end());
        for (Vertex v = 0; v < sorted.size(); ++v) REQUIRE(sorted[v] == v);
        auto r = approx_partition(h, lambda, 0.01, mindeg);
        REQUIRE(std::abs(r.estimate / z - 1.0) <= 0.01);

        CountOptions threaded;
        threaded.threads = 3;
        auto single = approx_partition(h, lambda, 0.01);
        auto multi = approx_partition(h, lambda, 0.01, threaded);
        REQUIRE(single.estimate == multi.estimate);
        REQUIRE(single.depth_used == multi.depth_used);
    }
}

TEST_CASE("a depth cap that is too small is reported") {
    std::vector<std::vector<Vertex>> edges;
    for (Vertex v = 0; v < 11; ++v) edges.push_back({v, v + 1});
    edges.push_back({11, 0});
    Hypergraph cycle(12, edges);
    CountOptions opts;
    opts.max_depth = 1;
    auto r = approx_partition(cycle, 1.0, 1e-6, opts);
    CHECK(!r.budget_met);
    CHECK_THROWS_AS(approx_partition(cycle, 1.0, 1.5), InputError);
}
