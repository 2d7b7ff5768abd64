#pragma once

#include <span>
#include <string>
#include <vector>

namespace hyperdecay {

// Occupation ratio R = p / (1 - p) on the extended nonnegative reals. Infinity
// (a pinned-occupied vertex) is a tagged state rather than an IEEE overflow, so
// the recursion never sees inf * 0 or inf - inf.
class Ratio {
public:
    constexpr Ratio() = default;
    static constexpr Ratio finite(double value) { return Ratio(value, false); }
    static constexpr Ratio infinity() { return Ratio(0.0, true); }
    static Ratio from_probability(double p);

    constexpr bool is_infinite() const { return infinite_; }
    // Only meaningful when finite.
    constexpr double value() const { return value_; }

    // p = R / (1 + R); infinity maps to 1.
    double probability() const;

    friend constexpr bool operator==(const Ratio& a, const Ratio& b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }
    friend constexpr bool operator<=(const Ratio& a, const Ratio& b) {
        return b.infinite_ || (!a.infinite_ && a.value_ <= b.value_);
    }

    std::string str() const;

private:
    constexpr Ratio(double v, bool inf) : value_(v), infinite_(inf) {}
    double value_ = 0.0;
    bool infinite_ = false;
};

// Certified bounds lo <= R <= hi on an occupation ratio.
struct RatioInterval {
    Ratio lo;
    Ratio hi;

    static RatioInterval exact(Ratio r) { return {r, r}; }
    static RatioInterval unknown() { return {Ratio::finite(0.0), Ratio::infinity()}; }

    bool is_exact() const { return lo == hi; }
    bool contains(Ratio r, double tolerance = 0.0) const;
    double probability_lo() const { return lo.probability(); }
    double probability_hi() const { return hi.probability(); }
    double probability_width() const { return probability_hi() - probability_lo(); }
    double probability_mid() const { return 0.5 * (probability_lo() + probability_hi()); }
};

// R = lambda_v * prod_i 1 / (1 + sum_j R_ij). A group holding an infinite
// ratio contributes the factor 0; no groups at all gives lambda_v.
Ratio tree_recursion_step(std::span<const std::vector<Ratio>> groups, double lambda_v);

// The same step applied to intervals. The map is decreasing in every child
// ratio, so the lower bound uses the children's upper bounds and vice versa.
RatioInterval tree_recursion_step(std::span<const std::vector<RatioInterval>> groups, double lambda_v);

// Accumulates one node's recursion without materializing child vectors.
class RecursionAccumulator {
public:
    explicit RecursionAccumulator(double lambda_v) : product_(lambda_v) {}

    void begin_group() {
        sum_ = 0.0;
        group_has_infinity_ = false;
    }
    void add_child(Ratio r) {
        if (r.is_infinite()) {
            group_has_infinity_ = true;
        } else {
            sum_ += r.value();
        }
    }
    void end_group() {
        if (group_has_infinity_) {
            product_ = 0.0;
        } else {
            product_ /= 1.0 + sum_;
        }
    }
    Ratio result() const { return Ratio::finite(product_); }

private:
    double product_;
    double sum_ = 0.0;
    bool group_has_infinity_ = false;
};

}  // namespace hyperdecay
