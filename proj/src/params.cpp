#include "kg1d/params.hpp"

#include <cmath>
#include <limits>

#include "kg1d/errors.hpp"

namespace kg1d {

const char* to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

const char* to_string(Branch b) {
    switch (b) {
        case Branch::upper: return "upper";
        case Branch::lower: return "lower";
        default: return "unassigned";
    }
}

double delta_from_alpha(double alpha) {
    // 1/2 - sqrt(1/4 - alpha^2) rationalized to avoid the cancellation
    return alpha * alpha / (0.5 + std::sqrt(0.25 - alpha * alpha));
}

ModelParams make_model(double alpha, double m) {
    require(std::isfinite(alpha) && alpha > 0.0 && alpha <= 0.5, Errc::invalid_argument,
            "make_model: alpha must lie in (0, 1/2]");
    require(std::isfinite(m) && m > 0.0, Errc::invalid_argument,
            "make_model: m must be positive");
    return ModelParams{alpha, m, delta_from_alpha(alpha)};
}

double s_from_a(double a, const ModelParams& p) {
    require(std::isfinite(a) && a > 0.0, Errc::domain, "s_from_a: a must be positive");
    return p.m * a / p.delta;
}

double a_from_s(double s, const ModelParams& p) {
    require(std::isfinite(s) && s > 0.0, Errc::domain, "a_from_s: s must be positive");
    return s * p.delta / p.m;
}

namespace {
// |E| closer to m than this (relatively) makes sqrt(m^2 - E^2) ill-conditioned.
constexpr double threshold_guard = 1e-14;
} // namespace

double beta_from_E(double E, const ModelParams& p) {
    require(std::isfinite(E), Errc::domain, "beta_from_E: E must be finite");
    require(p.m - std::fabs(E) >= threshold_guard * p.m, Errc::domain,
            "beta_from_E: |E| too close to m (supercritical or unbound input)");
    const double kappa = std::sqrt((p.m - E) * (p.m + E));
    return p.alpha * E / (p.delta * kappa);
}

double E_from_beta(double beta, const ModelParams& p) {
    require(std::isfinite(beta), Errc::domain, "E_from_beta: beta must be finite");
    const double b = beta * p.delta / p.alpha;  // = E / sqrt(m^2 - E^2)
    return p.m * b / std::sqrt(1.0 + b * b);
}

SpectralPoint make_spectral_point(double a, double E, Parity parity, int nodes,
                                  const ModelParams& p) {
    SpectralPoint pt;
    pt.a = a;
    pt.E = E;
    pt.s = s_from_a(a, p);
    if (E == 0.0)
        pt.beta = 0.0;
    else if (E == -p.m)
        pt.beta = -std::numeric_limits<double>::infinity();
    else
        pt.beta = beta_from_E(E, p);
    pt.parity = parity;
    pt.nodes = nodes;
    pt.branch = Branch::unassigned;
    return pt;
}

} // namespace kg1d
