#ifndef KG1D_POTENTIAL_HPP
#define KG1D_POTENTIAL_HPP

#include "kg1d/params.hpp"

namespace kg1d {

/// The two cutoff Coulomb families:
///   V1(x) = -alpha / (x + a)                     smooth on x >= 0
///   V2(x) = -alpha / x for x > a, else -alpha/a  derivative jump at x = a
enum class Family { V1, V2 };

const char* to_string(Family f);

/// Evaluation is restricted to the half line x >= 0; the full-line symmetry
/// is carried by parity initial conditions, not by the potential object.
struct PotentialSpec {
    Family family = Family::V1;
    double a = 0.0;
    double alpha = default_alpha;
};

/// Validates a > 0 and alpha >= 0 (alpha = 0 is allowed for free-potential
/// verification runs; bound-state searches use alpha from ModelParams).
PotentialSpec make_potential(Family family, double a, double alpha);

inline PotentialSpec make_potential(Family family, double a, const ModelParams& p) {
    return make_potential(family, a, p.alpha);
}

/// V(x) for x >= 0; rejects x < 0.
double potential_value(const PotentialSpec& spec, double x);

/// min over x >= 0 of V, which is -alpha/a for both families.
double depth(const PotentialSpec& spec);

} // namespace kg1d

#endif
