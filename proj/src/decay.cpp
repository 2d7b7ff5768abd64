#include "hyperdecay/decay.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace hyperdecay {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kCriticalTolerance = 1e-12;

// Bisection on a sign change; stops when the bracket cannot shrink further.
template <class F>
double bisect(F&& f, double lo, double hi) {
    bool lo_negative = f(lo) < 0.0;
    for (int i = 0; i < 2000; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if ((f(mid) < 0.0) == lo_negative) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

void check_dk(int d, int k) {
    if (d < 1 || k < 1) throw InputError("d and k must be positive");
}

void check_lambda(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InputError("lambda must be positive and finite");
}

}  // namespace

void ModelParams::validate() const {
    check_dk(d, k);
    check_lambda(lambda);
}

double ipow(double x, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

double hardcore_map(int d, int k, double lambda, double x) { return k * lambda / ipow(1.0 + x, d); }

double hardcore_map2(int d, int k, double lambda, double x) {
    return hardcore_map(d, k, lambda, hardcore_map(d, k, lambda, x));
}

double critical_activity(int d, int k) {
    check_dk(d, k);
    if (d == 1) return kInf;
    return ipow(d, d) / (k * ipow(d - 1, d + 1));
}

int compare_to_critical(int d, int k, double lambda) {
    double lc = critical_activity(d, k);
    if (std::isinf(lc)) return -1;
    if (std::abs(lambda - lc) <= kCriticalTolerance * lc) return 0;
    return lambda < lc ? -1 : 1;
}

double fixed_point(int d, int k, double lambda) {
    check_dk(d, k);
    check_lambda(lambda);
    double kl = k * lambda;
    if (d == 1) return (-1.0 + std::sqrt(1.0 + 4.0 * kl)) / 2.0;
    if (compare_to_critical(d, k, lambda) == 0) return 1.0 / (d - 1);
    auto h = [&](double x) { return x * ipow(1.0 + x, d) - kl; };
    double hi = std::min(kl, std::pow(kl, 1.0 / (d + 1)));
    if (h(hi) < 0.0) hi = kl;
    double x = bisect(h, 0.0, hi);
    // One Newton polish; kept only if it does not worsen the residual.
    double dh = ipow(1.0 + x, d - 1) * (1.0 + (d + 1) * x);
    double polished = x - h(x) / dh;
    if (polished > 0.0 && std::abs(h(polished)) < std::abs(h(x))) x = polished;
    return x;
}

double contraction_ratio(int d, int k, double lambda) {
    if (d >= 2 && compare_to_critical(d, k, lambda) == 0) return 1.0;
    double x = fixed_point(d, k, lambda);
    return d * x / (1.0 + x);
}

std::vector<double> two_periodic_points(int d, int k, double lambda) {
    double xhat = fixed_point(d, k, lambda);
    if (compare_to_critical(d, k, lambda) <= 0) return {xhat};
    double kl = k * lambda;
    auto phi = [&](double x) { return hardcore_map2(d, k, lambda, x) - x; };
    // phi(0) > 0 and phi < 0 just below x^; phi > 0 just above x^ and phi(k lambda) < 0.
    double below = -1.0;
    double above = -1.0;
    for (int j = 1; j <= 60 && below < 0.0; ++j) {
        double a = xhat * (1.0 - std::ldexp(1.0, -j));
        if (phi(a) < 0.0) below = a;
    }
    for (int j = 1; j <= 60 && above < 0.0; ++j) {
        double b = xhat + (kl - xhat) * std::ldexp(1.0, -j);
        if (phi(b) > 0.0) above = b;
    }
    if (below < 0.0 || above < 0.0) return {xhat};
    double minus = bisect(phi, 0.0, below);
    double plus = bisect(phi, above, kl);
    return {minus, xhat, plus};
}

ExtremalSequences extremal_ratio_sequences(int d, int k, double lambda, std::size_t l_max) {
    check_dk(d, k);
    check_lambda(lambda);
    if (l_max < 1) throw InputError("l_max must be at least 1");
    ExtremalSequences s;
    s.plus.reserve(l_max);
    s.minus.reserve(l_max);
    s.plus.push_back(lambda);
    s.minus.push_back(0.0);
    for (std::size_t l = 1; l < l_max; ++l) {
        double p = s.plus.back();
        double m = s.minus.back();
        s.plus.push_back(lambda / ipow(1.0 + k * m, d));
        s.minus.push_back(lambda / ipow(1.0 + k * p, d));
    }
    return s;
}

double regular_root_ratio(int d, int k, double lambda, double r) { return lambda / ipow(1.0 + k * r, d + 1); }

double regular_tree_gap(int d, int k, double lambda, std::size_t l) {
    if (l == 0) return 1.0;
    if (l == 1) return lambda / (1.0 + lambda);
    auto s = extremal_ratio_sequences(d, k, lambda, l - 1);
    double hi = regular_root_ratio(d, k, lambda, s.minus.back());
    double lo = regular_root_ratio(d, k, lambda, s.plus.back());
    return hi / (1.0 + hi) - lo / (1.0 + lo);
}

CriticalConstants critical_constants(int d, int k, double lambda) {
    if (d < 2 || compare_to_critical(d, k, lambda) != 0) {
        throw std::domain_error("critical constants need d >= 2 and lambda = lambda_c");
    }
    CriticalConstants c;
    double dd = d;
    c.gamma = std::sqrt(3.0 * dd * dd / ((dd + 1.0) * ipow(dd - 1.0, 3)));
    c.c2 = std::sqrt(2.0) * (dd + 1.0) * lambda * (1.0 + k * dd * lambda) * c.gamma;
    double xhat = fixed_point(d, k, lambda);
    double x = k * lambda;  // x_1 = k R+_1
    std::size_t t = 0;
    while (x - xhat > c.gamma / std::sqrt(2.0)) {
        x = hardcore_map2(d, k, lambda, x);
        if (++t > 100'000'000) throw std::runtime_error("critical sequence failed to approach the fixed point");
    }
    c.l0 = 2 * t;
    return c;
}

DecayRateBounds decay_rate_bounds(int d, int k, double lambda, std::size_t l) {
    check_dk(d, k);
    check_lambda(lambda);
    DecayRateBounds b;
    b.ssm_factor = (1.0 + lambda) * (lambda + ipow(1.0 + k * lambda, d + 1)) / lambda;
    int cmp = compare_to_critical(d, k, lambda);
    if (cmp > 0) return b;
    if (l <= 1) {
        b.wsm_bound = 1.0;
        return b;
    }
    if (cmp < 0) {
        double rate = contraction_ratio(d, k, lambda);
        double c1 = (d + 1.0) * k * lambda * lambda * (1.0 + k * d * lambda);
        double exponent = static_cast<double>(l) - 4.0;
        b.wsm_bound = std::min(1.0, c1 * std::pow(rate, exponent));
        return b;
    }
    CriticalConstants c = critical_constants(d, k, lambda);
    if (l < c.l0 + 3) {
        b.wsm_bound = 1.0;
    } else {
        b.wsm_bound = std::min(1.0, c.c2 / std::sqrt(static_cast<double>(l - c.l0)));
    }
    return b;
}

namespace {

struct LazyEvaluator {
    SawWalker walker;
    const Pinning& pinning;
    const ActivityVector& activity;
    std::size_t limit;
    std::vector<std::vector<SawWalker::Group>> scratch;

    RatioInterval evaluate() {
        Vertex v = walker.end();
        if (auto s = pinning.get(v)) {
            return RatioInterval::exact(*s == Spin::Occupied ? Ratio::infinity() : Ratio::finite(0.0));
        }
        std::size_t depth = walker.depth();
        if (scratch.size() <= depth) scratch.resize(depth + 1);
        walker.child_groups(scratch[depth]);
        if (scratch[depth].empty()) return RatioInterval::exact(Ratio::finite(activity.at(v)));
        if (depth >= limit) return RatioInterval::unknown();
        // scratch[depth] is reused by deeper calls only at higher indices.
        RecursionAccumulator lower(activity.at(v));
        RecursionAccumulator upper(activity.at(v));
        for (std::size_t g = 0; g < scratch[depth].size(); ++g) {
            lower.begin_group();
            upper.begin_group();
            EdgeId edge = scratch[depth][g].edge;
            for (std::size_t c = 0; c < scratch[depth][g].children.size(); ++c) {
                walker.push(edge, scratch[depth][g].children[c]);
                RatioInterval r = evaluate();
                walker.pop();
                lower.add_child(r.hi);
                upper.add_child(r.lo);
            }
            lower.end_group();
            upper.end_group();
        }
        return {lower.result(), upper.result()};
    }
};

}  // namespace

RatioInterval truncated_marginal(const Hypergraph& h, Vertex v, const Pinning& pinning,
                                 const ActivityVector& activity, std::size_t t, TruncatedOptions options) {
    pinning.validate_for(h);
    if (v >= h.num_vertices()) throw InputError("vertex out of range", v);
    std::optional<EdgeOrdering> own;
    const EdgeOrdering* ordering = options.ordering;
    if (!ordering) {
        own = EdgeOrdering::input_order(h);
        ordering = &*own;
    }
    LazyEvaluator eval{SawWalker(h, *ordering, v), pinning, activity, t, {}};
    return eval.evaluate();
}

}  // namespace hyperdecay
