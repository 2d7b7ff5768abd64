#include "hyperdecay/counting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "hyperdecay/decay.hpp"
#include "hyperdecay/saw_tree.hpp"

namespace hyperdecay {

std::string to_string(Regime r) {
    switch (r) {
        case Regime::FPTAS: return "FPTAS";
        case Regime::CriticalPTAS: return "CriticalPTAS";
        case Regime::Gap: return "Gap";
        case Regime::Hard: return "Hard";
    }
    return "?";
}

double hardness_threshold(int d, int k) {
    double factor = (2.0 * k + 1.0 + (k % 2 == 0 ? 1.0 : -1.0)) / (k + 1.0);
    return factor * critical_activity(d, k);
}

Regime classify_regime(int d, int k, double lambda) {
    int cmp = compare_to_critical(d, k, lambda);
    if (cmp < 0) return Regime::FPTAS;
    if (cmp == 0) return Regime::CriticalPTAS;
    return lambda > hardness_threshold(d, k) ? Regime::Hard : Regime::Gap;
}

DerivedParams derived_params(const Hypergraph& h) {
    auto s = h.stats();
    return {std::max<int>(1, static_cast<int>(s.d)), std::max<int>(1, static_cast<int>(s.k))};
}

std::vector<Vertex> elimination_order(const Hypergraph& h, VertexOrder order) {
    std::size_t n = h.num_vertices();
    std::vector<Vertex> out;
    out.reserve(n);
    if (order == VertexOrder::Input) {
        for (Vertex v = 0; v < n; ++v) out.push_back(v);
        return out;
    }
    // Greedy: repeatedly take the vertex with the fewest edges that still hold
    // another uneliminated vertex; ties by index.
    std::vector<std::size_t> alive(h.num_edges());
    for (EdgeId e = 0; e < h.num_edges(); ++e) alive[e] = h.edge(e).size();
    std::vector<char> done(n, 0);
    for (std::size_t step = 0; step < n; ++step) {
        Vertex best = 0;
        std::size_t best_deg = std::numeric_limits<std::size_t>::max();
        for (Vertex v = 0; v < n; ++v) {
            if (done[v]) continue;
            std::size_t deg = 0;
            for (EdgeId e : h.incident_edges(v)) deg += alive[e] >= 2;
            if (deg < best_deg) {
                best = v;
                best_deg = deg;
            }
        }
        done[best] = 1;
        for (EdgeId e : h.incident_edges(best)) --alive[e];
        out.push_back(best);
    }
    return out;
}

std::optional<std::size_t> depth_for_budget(int d, int k, double lambda, double budget) {
    int cmp = compare_to_critical(d, k, lambda);
    if (cmp > 0) return std::nullopt;
    double ssm = decay_rate_bounds(d, k, lambda, 0).ssm_factor;
    double target = budget / ssm;
    if (target >= 1.0) return std::size_t{0};
    if (cmp < 0) {
        // C1 rate^(t-4) <= target  <=>  t >= 4 + ln(target / C1) / ln(rate).
        double rate = contraction_ratio(d, k, lambda);
        double c1 = (d + 1.0) * k * lambda * lambda * (1.0 + k * d * lambda);
        double guess = 4.0 + std::log(target / c1) / std::log(rate);
        std::size_t t = guess <= 2.0 ? 2 : static_cast<std::size_t>(std::ceil(guess));
        // Settle against the actual bound to absorb rounding in the logs.
        while (t > 2 && *decay_rate_bounds(d, k, lambda, t - 1).wsm_bound <= target) --t;
        while (*decay_rate_bounds(d, k, lambda, t).wsm_bound > target) ++t;
        return t;
    }
    CriticalConstants c = critical_constants(d, k, lambda);
    double need = c.c2 / target;
    double span = std::ceil(need * need);
    if (span > 1e18) return std::numeric_limits<std::size_t>::max();
    return c.l0 + std::max<std::size_t>(3, static_cast<std::size_t>(span));
}

std::optional<std::size_t> depth_for_error(int d, int k, double lambda, double eps, std::size_t n) {
    if (n == 0) return std::size_t{0};
    return depth_for_budget(d, k, lambda, eps / (2.0 * (1.0 + lambda) * n));
}

namespace {

struct MarginalState {
    RatioInterval interval = RatioInterval::unknown();
    std::size_t depth = 0;
    bool met = false;
};

enum class Target { Partition, LogPartition };

class Telescoper {
public:
    Telescoper(const Hypergraph& h, double lambda, double eps, const CountOptions& options, Target target)
        : h_(h),
          lambda_(lambda),
          eps_(eps),
          options_(options),
          target_(target),
          activity_(lambda),
          order_(elimination_order(h, options.order)),
          ordering_(options.ordering_seed ? EdgeOrdering::shuffled(h, *options.ordering_seed)
                                          : EdgeOrdering::input_order(h)) {
        if (!(eps > 0.0 && eps < 1.0)) throw InputError("eps must lie in (0, 1)");
    }

    ApproxResult run() {
        std::size_t n = h_.num_vertices();
        auto params = derived_params(h_);
        ApproxResult result;
        result.d = params.d;
        result.k = params.k;
        result.lambda_c = critical_activity(params.d, params.k);
        result.regime = classify_regime(params.d, params.k, lambda_);
        bool covered = target_ == Target::Partition ? result.regime == Regime::FPTAS
                                                    : result.regime != Regime::Gap && result.regime != Regime::Hard;
        result.a_priori_guarantee = covered;

        double budget = initial_budget(n);
        // A SAW from v visits distinct vertices, so depth n - 1 is a full expansion.
        std::size_t cap = n == 0 ? 0 : n - 1;
        if (auto t = depth_for_budget(params.d, params.k, lambda_, budget)) cap = std::min(cap, std::max<std::size_t>(*t, 1));
        // The a-priori cap is certified for the initial budget; if the box
        // check asks for more, full expansion is still allowed.
        std::size_t hard_cap = options_.max_depth.value_or(std::numeric_limits<std::size_t>::max());
        states_.assign(n, {});
        for (int round = 0; round < 64; ++round) {
            result.per_marginal_budget = budget;
            std::size_t depth_cap = std::min(round == 0 ? cap : (n == 0 ? 0 : n - 1), hard_cap);
            refine_all(budget, depth_cap);
            summarize(result);
            if (!result.budget_met || result.certified_error <= eps_) break;
            budget /= 2.0;
        }
        return result;
    }

private:
    double initial_budget(std::size_t n) const {
        if (n == 0) return eps_;
        if (target_ == Target::Partition) return eps_ / (2.0 * (1.0 + lambda_) * n);
        return eps_ / (4.0 * std::max(std::log(1.0 / eps_), 1.0));
    }

    Pinning prefix_pinning(std::size_t i) const {
        Pinning p;
        for (std::size_t j = 0; j < i; ++j) p.pin(order_[j], Spin::Unoccupied);
        return p;
    }

    void refine(std::size_t i, double budget, std::size_t depth_cap) {
        MarginalState& s = states_[i];
        if (s.interval.is_exact() || 0.5 * s.interval.probability_width() <= budget) {
            s.met = true;
            return;
        }
        Pinning pinning = prefix_pinning(i);
        std::size_t t = s.depth == 0 ? 2 : static_cast<std::size_t>(std::ceil(1.5 * s.depth));
        for (;;) {
            t = std::min(t, depth_cap);
            s.interval = truncated_marginal(h_, order_[i], pinning, activity_, t, {&ordering_});
            s.depth = t;
            if (s.interval.is_exact() || 0.5 * s.interval.probability_width() <= budget) {
                s.met = true;
                return;
            }
            if (t >= depth_cap) {
                s.met = false;
                return;
            }
            t = static_cast<std::size_t>(std::ceil(1.5 * t));
        }
    }

    void refine_all(double budget, std::size_t depth_cap) {
        std::size_t n = states_.size();
        std::size_t threads = std::max<std::size_t>(1, std::min(options_.threads, n));
        if (threads == 1) {
            for (std::size_t i = 0; i < n; ++i) refine(i, budget, depth_cap);
            return;
        }
        // Static striping: each marginal is computed independently, so the
        // results do not depend on the thread count.
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < threads; ++w) {
            pool.emplace_back([this, w, threads, n, budget, depth_cap] {
                for (std::size_t i = w; i < n; i += threads) refine(i, budget, depth_cap);
            });
        }
        for (auto& th : pool) th.join();
    }

    void summarize(ApproxResult& result) const {
        // log Z = -sum log(1 - p_i); accumulated in index order.
        double log_est = 0.0, log_lo = 0.0, log_hi = 0.0;
        result.depth_used = 0;
        result.budget_met = true;
        for (const auto& s : states_) {
            double lo = s.interval.probability_lo();
            double hi = s.interval.probability_hi();
            double mid = 0.5 * (lo + hi);
            log_est -= std::log1p(-mid);
            log_lo -= std::log1p(-lo);
            log_hi -= hi >= 1.0 ? -std::numeric_limits<double>::infinity() : std::log1p(-hi);
            result.depth_used = std::max(result.depth_used, s.depth);
            result.budget_met = result.budget_met && s.met;
        }
        result.log_estimate = log_est;
        if (target_ == Target::Partition) {
            result.estimate = std::exp(log_est);
            // Worst case over Z in [exp(log_lo), exp(log_hi)].
            double over = std::expm1(log_est - log_lo);
            double under = -std::expm1(log_est - log_hi);
            result.certified_error = std::max(over, under);
        } else {
            result.estimate = log_est;
            double spread = std::max(log_est - log_lo, log_hi - log_est);
            result.certified_error = log_lo > 0.0 ? spread / log_lo : (spread > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
        }
    }

    const Hypergraph& h_;
    double lambda_;
    double eps_;
    CountOptions options_;
    Target target_;
    ActivityVector activity_;
    std::vector<Vertex> order_;
    EdgeOrdering ordering_;
    std::vector<MarginalState> states_;
};

}  // namespace

ApproxResult approx_partition(const Hypergraph& h, double lambda, double eps, CountOptions options) {
    return Telescoper(h, lambda, eps, options, Target::Partition).run();
}

ApproxResult approx_log_partition(const Hypergraph& h, double lambda, double eps, CountOptions options) {
    return Telescoper(h, lambda, eps, options, Target::LogPartition).run();
}

}  // namespace hyperdecay
