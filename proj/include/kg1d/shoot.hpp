#ifndef KG1D_SHOOT_HPP
#define KG1D_SHOOT_HPP

#include <vector>

#include "kg1d/mesh.hpp"
#include "kg1d/params.hpp"
#include "kg1d/potential.hpp"

namespace kg1d {

/// Outcome of one half-line integration of psi'' = [m^2 - (E - V)^2] psi.
struct ShotResult {
    int nodes = 0;                      // strict sign changes on x > 0
    double terminal_log_magnitude = 0;  // log|psi(x_end)|
    int terminal_sign = +1;             // sign of psi(x_end), zero resolved by last nonzero
    bool halted_early = false;          // blow-up threshold tripped
    double x_end = 0.0;
};

struct TraceSample {
    double x, psi, dpsi;
};

/// Classic RK4 over one prebuilt mesh from an arbitrary initial state.
/// Scaling the initial state scales psi linearly and changes neither the
/// node count nor the terminal sign.
ShotResult integrate_over_mesh(const ModelParams& p, const PotentialSpec& spec,
                               double E, double psi0, double dpsi0, const Mesh& mesh,
                               double blowup_threshold,
                               std::vector<TraceSample>* trace = nullptr);

/// Parity initial conditions: even psi(0) = 1, psi'(0) = 0;
/// odd psi(0) = 0, psi'(0) = 1 (slope normalization arbitrary by linearity).
ShotResult shoot(const ModelParams& p, const PotentialSpec& spec, double E,
                 Parity parity, const MeshPolicy& policy,
                 std::vector<TraceSample>* trace = nullptr);

} // namespace kg1d

#endif
