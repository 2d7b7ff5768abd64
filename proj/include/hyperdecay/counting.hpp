#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hyperdecay/hypergraph.hpp"

namespace hyperdecay {

enum class Regime { FPTAS, CriticalPTAS, Gap, Hard };

std::string to_string(Regime r);

// ((2k + 1 + (-1)^k) / (k + 1)) * lambda_c; +infinity when d = 1.
double hardness_threshold(int d, int k);

Regime classify_regime(int d, int k, double lambda);

// Uniformity parameters used for an input: d = max_degree - 1 and
// k = max_edge_size - 1, each raised to at least 1.
struct DerivedParams {
    int d = 1;
    int k = 1;
};
DerivedParams derived_params(const Hypergraph& h);

enum class VertexOrder { Input, MinDegree };

// Elimination order for the telescoping product.
std::vector<Vertex> elimination_order(const Hypergraph& h, VertexOrder order);

struct CountOptions {
    VertexOrder order = VertexOrder::Input;
    std::size_t threads = 1;
    // Hard cap on the truncation depth (e.g. from --depth); none by default.
    std::optional<std::size_t> max_depth;
    // Seed for shuffling the per-vertex edge ordering; input order when absent.
    std::optional<std::uint64_t> ordering_seed;
};

struct ApproxResult {
    // Z estimate for approx_partition, log Z estimate for approx_log_partition.
    double estimate = 0.0;
    double log_estimate = 0.0;
    // Relative error guaranteed by the interval box around the estimate.
    double certified_error = 0.0;
    std::size_t depth_used = 0;
    double per_marginal_budget = 0.0;
    // False when a depth cap stopped refinement before the budget was met.
    bool budget_met = true;
    // True when lambda is in the regime covered by the a-priori analysis.
    bool a_priori_guarantee = true;
    Regime regime = Regime::FPTAS;
    int d = 1;
    int k = 1;
    double lambda_c = 0.0;
};

// Smallest t with ssm_factor * wsm_bound(t) <= budget; empty above lambda_c.
std::optional<std::size_t> depth_for_budget(int d, int k, double lambda, double budget);

// depth_for_budget with the per-marginal budget eps / (2 (1 + lambda) n).
std::optional<std::size_t> depth_for_error(int d, int k, double lambda, double eps, std::size_t n);

// Z estimate with (1 - eps) Z <= estimate <= (1 + eps) Z whenever budget_met.
ApproxResult approx_partition(const Hypergraph& h, double lambda, double eps, CountOptions options = {});

// log Z estimate within relative error eps whenever budget_met.
ApproxResult approx_log_partition(const Hypergraph& h, double lambda, double eps, CountOptions options = {});

}  // namespace hyperdecay
