#include "hyperdecay/ratio.hpp"

#include <cmath>
#include <sstream>

namespace hyperdecay {

Ratio Ratio::from_probability(double p) {
    if (p >= 1.0) return infinity();
    return finite(p / (1.0 - p));
}

double Ratio::probability() const {
    if (infinite_) return 1.0;
    return value_ / (1.0 + value_);
}

std::string Ratio::str() const {
    if (infinite_) return "inf";
    std::ostringstream os;
    os.precision(17);
    os << value_;
    return os.str();
}

bool RatioInterval::contains(Ratio r, double tolerance) const {
    if (r.is_infinite()) return hi.is_infinite();
    bool above_lo = lo.is_infinite() ? false : lo.value() <= r.value() + tolerance;
    bool below_hi = hi.is_infinite() || r.value() <= hi.value() + tolerance;
    return above_lo && below_hi;
}

Ratio tree_recursion_step(std::span<const std::vector<Ratio>> groups, double lambda_v) {
    RecursionAccumulator acc(lambda_v);
    for (const auto& group : groups) {
        acc.begin_group();
        for (Ratio r : group) acc.add_child(r);
        acc.end_group();
    }
    return acc.result();
}

RatioInterval tree_recursion_step(std::span<const std::vector<RatioInterval>> groups, double lambda_v) {
    RecursionAccumulator lower(lambda_v);
    RecursionAccumulator upper(lambda_v);
    for (const auto& group : groups) {
        lower.begin_group();
        upper.begin_group();
        for (const auto& child : group) {
            lower.add_child(child.hi);
            upper.add_child(child.lo);
        }
        lower.end_group();
        upper.end_group();
    }
    return {lower.result(), upper.result()};
}

}  // namespace hyperdecay
