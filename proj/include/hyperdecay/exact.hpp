#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <string_view>
#include <vector>

#include "hyperdecay/hypergraph.hpp"

namespace hyperdecay {

using Rational = boost::multiprecision::cpp_rational;

// Parses "3", "-2", "0.125", "1e-3", "7/4" exactly. Throws InputError otherwise.
Rational parse_rational(std::string_view text);

// Decimal rendering "p/q" (or "p" for integers).
std::string to_string(const Rational& r);

template <class Scalar>
struct ExactResult {
    Scalar z{};
    // Pr[v in I] under the Gibbs measure conditioned on the pinning.
    std::vector<Scalar> marginals;
};

struct ExactOptions {
    std::size_t max_vertices = 24;
};

// Brute-force partition function and marginals over independent sets I with
// |I ∩ e| <= 1 for every edge, consistent with the pinning. Z includes the
// weight of pinned-occupied vertices. Throws InputError on an invalid pinning
// or when n exceeds options.max_vertices.
ExactResult<double> exact_partition(const Hypergraph& h, const ActivityVector& activity,
                                    const Pinning& pinning = {}, ExactOptions options = {});

ExactResult<Rational> exact_partition_rational(const Hypergraph& h, const Rational& lambda,
                                               const std::map<Vertex, Rational>& overrides = {},
                                               const Pinning& pinning = {}, ExactOptions options = {});

}  // namespace hyperdecay
