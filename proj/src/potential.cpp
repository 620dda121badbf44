#include "kg1d/potential.hpp"

#include <cmath>

#include "kg1d/errors.hpp"

namespace kg1d {

const char* to_string(Family f) { return f == Family::V1 ? "v1" : "v2"; }

PotentialSpec make_potential(Family family, double a, double alpha) {
    require(std::isfinite(a) && a > 0.0, Errc::domain, "make_potential: a must be positive");
    require(std::isfinite(alpha) && alpha >= 0.0, Errc::invalid_argument,
            "make_potential: alpha must be non-negative");
    return PotentialSpec{family, a, alpha};
}

double potential_value(const PotentialSpec& spec, double x) {
    require(x >= 0.0, Errc::domain, "potential_value: x must be non-negative");
    if (spec.family == Family::V1) return -spec.alpha / (x + spec.a);
    return x > spec.a ? -spec.alpha / x : -spec.alpha / spec.a;
}

double depth(const PotentialSpec& spec) { return -spec.alpha / spec.a; }

} // namespace kg1d
