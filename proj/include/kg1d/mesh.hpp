#ifndef KG1D_MESH_HPP
#define KG1D_MESH_HPP

#include <vector>

#include "kg1d/params.hpp"
#include "kg1d/potential.hpp"

namespace kg1d {

/// Graded-mesh policy for the outward integration.  Steps start at h0 near
/// the origin and grow geometrically; the domain length is x_max_factor/kappa
/// with kappa = sqrt(m^2 - E^2), capped by x_max_cap (and equal to the cap for
/// the threshold shots E = +-m where kappa vanishes).
struct MeshPolicy {
    double h0 = 0.0;              // 0 -> auto: min(a/100, 1e-3/m, lambda_min/50)
    double growth = 1.01;         // per-step factor, in [1, 1.1]
    double x_max_factor = 30.0;   // >= 10
    double x_max_cap = 0.0;       // 0 -> auto: 1e6/m
    double blowup_threshold = 1e8;
};

/// Breakpoints 0 = x[0] < x[1] < ... < x[n] = x_max.  For V2 the kink x = a
/// is an exact mesh node whenever a < x_max, so no Runge-Kutta step straddles
/// the derivative jump.
struct Mesh {
    std::vector<double> x;
    double x_max() const { return x.back(); }
};

double resolve_x_max_cap(const MeshPolicy& policy, const ModelParams& p);
double resolve_h0(const MeshPolicy& policy, const ModelParams& p, double E,
                  const PotentialSpec& spec);

/// Requires |E| <= m (the endpoints are permitted: threshold shots).
Mesh build_mesh(const ModelParams& p, double E, const PotentialSpec& spec,
                const MeshPolicy& policy);

} // namespace kg1d

#endif
