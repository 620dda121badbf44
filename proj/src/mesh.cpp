#include "kg1d/mesh.hpp"

#include <cmath>

#include "kg1d/errors.hpp"

namespace kg1d {

double resolve_x_max_cap(const MeshPolicy& policy, const ModelParams& p) {
    return policy.x_max_cap > 0.0 ? policy.x_max_cap : 1e6 / p.m;
}

double resolve_h0(const MeshPolicy& policy, const ModelParams& p, double E,
                  const PotentialSpec& spec) {
    if (policy.h0 > 0.0) return policy.h0;
    double h0 = std::min(spec.a / 100.0, 1e-3 / p.m);
    // Near the origin the equation may oscillate: resolve the shortest local
    // wavelength with ~50 steps.
    const double ev0 = E - potential_value(spec, 0.0);
    const double w0 = (p.m - ev0) * (p.m + ev0);  // m^2 - (E - V(0))^2
    if (w0 < 0.0) h0 = std::min(h0, (2.0 * M_PI / 50.0) / std::sqrt(-w0));
    return h0;
}

Mesh build_mesh(const ModelParams& p, double E, const PotentialSpec& spec,
                const MeshPolicy& policy) {
    require(std::fabs(E) <= p.m, Errc::domain, "build_mesh: |E| must be <= m");
    require(policy.growth >= 1.0 && policy.growth <= 1.1, Errc::invalid_argument,
            "build_mesh: growth must lie in [1, 1.1]");
    require(policy.x_max_factor >= 10.0, Errc::invalid_argument,
            "build_mesh: x_max_factor must be >= 10");

    const double cap = resolve_x_max_cap(policy, p);
    const double kappa2 = (p.m - E) * (p.m + E);
    double x_max = cap;
    if (kappa2 > 0.0) x_max = std::min(policy.x_max_factor / std::sqrt(kappa2), cap);

    const double h0 = resolve_h0(policy, p, E, spec);
    require(h0 > 0.0 && std::isfinite(h0), Errc::internal, "build_mesh: bad h0");

    // The V2 kink must be an exact mesh node so no RK4 step straddles it.
    const bool align_kink = (spec.family == Family::V2) && (spec.a < x_max);

    Mesh mesh;
    mesh.x.reserve(4096);
    mesh.x.push_back(0.0);
    double x = 0.0, h = h0;
    while (x < x_max * (1.0 - 1e-15)) {
        double next = x + h;
        if (align_kink && x < spec.a && next >= spec.a * (1.0 - 1e-15)) {
            next = spec.a;
        } else if (next > x_max) {
            next = x_max;
        }
        require(next > x, Errc::internal, "build_mesh: non-monotone mesh");
        mesh.x.push_back(next);
        x = next;
        h *= policy.growth;
    }
    require(mesh.x.size() >= 2, Errc::internal, "build_mesh: empty mesh");
    return mesh;
}

} // namespace kg1d
