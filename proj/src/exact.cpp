#include "hyperdecay/exact.hpp"

#include <cctype>
#include <string>

namespace hyperdecay {

namespace {

template <class Scalar>
class Enumerator {
public:
    Enumerator(const Hypergraph& h, std::vector<Scalar> activity, std::vector<std::int8_t> pins)
        : h_(h), activity_(std::move(activity)), pins_(std::move(pins)), edge_load_(h.num_edges(), 0) {
        result_.z = Scalar(0);
        result_.marginals.assign(h.num_vertices(), Scalar(0));
    }

    ExactResult<Scalar> run() {
        visit(0, Scalar(1));
        if (result_.z == Scalar(0)) throw InputError("pinning has zero weight (occupied vertex with activity 0)");
        for (auto& m : result_.marginals) m /= result_.z;
        return std::move(result_);
    }

private:
    void visit(Vertex v, const Scalar& weight) {
        if (v == h_.num_vertices()) {
            result_.z += weight;
            for (Vertex u : chosen_) result_.marginals[u] += weight;
            return;
        }
        if (pins_[v] != 1) visit(v + 1, weight);
        if (pins_[v] == 0 || !can_occupy(v)) return;
        for (EdgeId e : h_.incident_edges(v)) ++edge_load_[e];
        chosen_.push_back(v);
        visit(v + 1, weight * activity_[v]);
        chosen_.pop_back();
        for (EdgeId e : h_.incident_edges(v)) --edge_load_[e];
    }

    bool can_occupy(Vertex v) const {
        for (EdgeId e : h_.incident_edges(v)) {
            if (edge_load_[e] != 0) return false;
        }
        return true;
    }

    const Hypergraph& h_;
    std::vector<Scalar> activity_;
    std::vector<std::int8_t> pins_;
    std::vector<int> edge_load_;
    std::vector<Vertex> chosen_;
    ExactResult<Scalar> result_;
};

void check_instance(const Hypergraph& h, const Pinning& pinning, const ExactOptions& options) {
    if (h.num_vertices() > options.max_vertices) {
        throw InputError("exact enumeration is capped at " + std::to_string(options.max_vertices) +
                         " vertices; instance has " + std::to_string(h.num_vertices()));
    }
    pinning.validate_for(h);
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto fail = [&]() -> Rational { throw InputError("cannot parse number '" + s + "'"); };
    if (s.empty()) return fail();
    if (auto slash = s.find('/'); slash != std::string::npos) {
        Rational num = parse_rational(s.substr(0, slash));
        Rational den = parse_rational(s.substr(slash + 1));
        if (den == 0) return fail();
        return num / den;
    }
    std::size_t pos = 0;
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
    boost::multiprecision::cpp_int digits = 0;
    long scale = 0;
    bool any_digit = false;
    bool seen_point = false;
    for (; pos < s.size(); ++pos) {
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits = digits * 10 + (c - '0');
            if (seen_point) --scale;
            any_digit = true;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!any_digit) return fail();
    if (pos < s.size()) {
        if (s[pos] != 'e' && s[pos] != 'E') return fail();
        ++pos;
        std::size_t used = 0;
        long exponent = 0;
        try {
            exponent = std::stol(s.substr(pos), &used);
        } catch (const std::exception&) {
            return fail();
        }
        if (pos + used != s.size() || exponent > 4000 || exponent < -4000) return fail();
        scale += exponent;
    }
    Rational value(digits);
    boost::multiprecision::cpp_int ten_pow = 1;
    for (long i = 0; i < (scale < 0 ? -scale : scale); ++i) ten_pow *= 10;
    value = scale < 0 ? value / Rational(ten_pow) : value * Rational(ten_pow);
    return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

ExactResult<double> exact_partition(const Hypergraph& h, const ActivityVector& activity, const Pinning& pinning,
                                    ExactOptions options) {
    check_instance(h, pinning, options);
    return Enumerator<double>(h, activity.dense(h.num_vertices()), pinning.dense(h.num_vertices())).run();
}

ExactResult<Rational> exact_partition_rational(const Hypergraph& h, const Rational& lambda,
                                               const std::map<Vertex, Rational>& overrides, const Pinning& pinning,
                                               ExactOptions options) {
    check_instance(h, pinning, options);
    if (lambda <= 0) throw InputError("activity must be positive");
    std::vector<Rational> activity(h.num_vertices(), lambda);
    for (const auto& [v, a] : overrides) {
        if (a < 0) throw InputError("activity override must be nonnegative", v);
        if (v < activity.size()) activity[v] = a;
    }
    return Enumerator<Rational>(h, std::move(activity), pinning.dense(h.num_vertices())).run();
}

}  // namespace hyperdecay
