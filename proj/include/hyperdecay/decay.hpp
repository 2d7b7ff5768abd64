#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hyperdecay/hypergraph.hpp"
#include "hyperdecay/ratio.hpp"
#include "hyperdecay/saw_tree.hpp"

namespace hyperdecay {

// (d, k, lambda) for the (k+1)-uniform (d+1)-regular hypertree.
struct ModelParams {
    int d = 1;
    int k = 1;
    double lambda = 1.0;

    // Throws InputError unless d >= 1, k >= 1 and lambda > 0 is finite.
    void validate() const;
};

// x^n by repeated multiplication. Monotone in x under round-to-nearest, which
// the sandwich checks rely on.
double ipow(double x, int n);

// f(x) = k*lambda / (1+x)^d and g = f o f.
double hardcore_map(int d, int k, double lambda, double x);
double hardcore_map2(int d, int k, double lambda, double x);

// lambda_c = d^d / (k (d-1)^(d+1)); +infinity when d = 1.
double critical_activity(int d, int k);

// lambda relative to lambda_c, with a 1e-12 relative tolerance around
// equality. Returns -1, 0 or +1.
int compare_to_critical(int d, int k, double lambda);

// Unique positive solution of x (1+x)^d = k*lambda.
double fixed_point(int d, int k, double lambda);

// |f'(x^)| = d x^ / (1 + x^).
double contraction_ratio(int d, int k, double lambda);

// Fixed points of g, sorted. {x^} when lambda <= lambda_c, otherwise
// {x-, x^, x+} with f(x-) = x+ and f(x+) = x-.
std::vector<double> two_periodic_points(int d, int k, double lambda);

// plus[l-1] = R+_l and minus[l-1] = R-_l for l = 1..l_max on the d-ary tree:
// R+_1 = lambda, R-_1 = 0, R+-_{l+1} = lambda / (1 + k R-+_l)^d.
struct ExtremalSequences {
    std::vector<double> plus;
    std::vector<double> minus;
};
ExtremalSequences extremal_ratio_sequences(int d, int k, double lambda, std::size_t l_max);

// Root of the (d+1)-regular tree whose children all have ratio r.
double regular_root_ratio(int d, int k, double lambda, double r);

// Root probability gap p+ - p- on the (d+1)-regular tree with the boundary at
// depth l, computed from the extremal sequences (l >= 1).
double regular_tree_gap(int d, int k, double lambda, std::size_t l);

struct DecayRateBounds {
    // Bound on the weak spatial mixing rate at distance l; empty above lambda_c.
    std::optional<double> wsm_bound;
    // (1+lambda)(lambda + (1+k lambda)^(d+1)) / lambda.
    double ssm_factor = 0.0;
};

// Explicit constants:
//   lambda < lambda_c:  min(1, C1 |f'(x^)|^(l-4)), C1 = (d+1) k lambda^2 (1 + k d lambda)
//   lambda = lambda_c:  min(1, C2 / sqrt(l - l0)) for l >= l0 + 3, else 1, with
//                       C2 = sqrt(2) (d+1) lambda (1 + k d lambda) gamma,
//                       gamma = sqrt(3 d^2 / ((d+1)(d-1)^3)), l0 = 2 t0, and t0
//                       the first t with k R+_{2t+1} - x^ <= gamma / sqrt(2).
DecayRateBounds decay_rate_bounds(int d, int k, double lambda, std::size_t l);

struct CriticalConstants {
    double gamma = 0.0;
    double c2 = 0.0;
    std::size_t l0 = 0;
};
// Throws std::domain_error unless lambda is critical and d >= 2.
CriticalConstants critical_constants(int d, int k, double lambda);

struct TruncatedOptions {
    const EdgeOrdering* ordering = nullptr;  // input order when null
};

// Certified [lo, hi] on the ratio at v: the SAW tree is walked lazily to depth
// t and every depth-t node that still has children is bounded by [0, inf].
// Exact whenever t reaches the bottom of the tree.
RatioInterval truncated_marginal(const Hypergraph& h, Vertex v, const Pinning& pinning,
                                 const ActivityVector& activity, std::size_t t, TruncatedOptions options = {});

}  // namespace hyperdecay
