#include "kg1d/shoot.hpp"

#include <cmath>

#include "kg1d/errors.hpp"

namespace kg1d {

namespace {

// m^2 - (E - V)^2 in the product form (m - E + V)((m + E) - V), which stays
// accurate at the threshold E = -m where m + E vanishes exactly.
inline double wave_coefficient(const ModelParams& p, double E, double V) {
    return (p.m - E + V) * ((p.m + E) - V);
}

struct Rhs {
    const ModelParams& p;
    const PotentialSpec& spec;
    double E;

    inline void operator()(double x, double psi, double dpsi, double& out_dpsi,
                           double& out_ddpsi) const {
        double V;
        if (spec.family == Family::V1) {
            V = -spec.alpha / (x + spec.a);
        } else {
            V = x > spec.a ? -spec.alpha / x : -spec.alpha / spec.a;
        }
        out_dpsi = dpsi;
        out_ddpsi = wave_coefficient(p, E, V) * psi;
    }
};

} // namespace

ShotResult integrate_over_mesh(const ModelParams& p, const PotentialSpec& spec,
                               double E, double psi0, double dpsi0, const Mesh& mesh,
                               double blowup_threshold,
                               std::vector<TraceSample>* trace) {
    const Rhs rhs{p, spec, E};

    double psi = psi0, dpsi = dpsi0;
    ShotResult result;
    int last_nonzero_sign = psi > 0.0 ? +1 : (psi < 0.0 ? -1 : 0);
    double last_psi = psi, last_x = mesh.x.front();

    if (trace) {
        trace->clear();
        trace->reserve(mesh.x.size());
        trace->push_back({last_x, psi, dpsi});
    }

    for (std::size_t i = 0; i + 1 < mesh.x.size(); ++i) {
        const double x = mesh.x[i];
        const double h = mesh.x[i + 1] - x;

        double k1p, k1d, k2p, k2d, k3p, k3d, k4p, k4d;
        rhs(x, psi, dpsi, k1p, k1d);
        rhs(x + 0.5 * h, psi + 0.5 * h * k1p, dpsi + 0.5 * h * k1d, k2p, k2d);
        rhs(x + 0.5 * h, psi + 0.5 * h * k2p, dpsi + 0.5 * h * k2d, k3p, k3d);
        rhs(x + h, psi + h * k3p, dpsi + h * k3d, k4p, k4d);
        const double psi_next = psi + h / 6.0 * (k1p + 2.0 * (k2p + k3p) + k4p);
        const double dpsi_next = dpsi + h / 6.0 * (k1d + 2.0 * (k2d + k3d) + k4d);

        if (!std::isfinite(psi_next) || !std::isfinite(dpsi_next)) {
            result.halted_early = true;  // overflowed: keep the last finite state
            break;
        }
        psi = psi_next;
        dpsi = dpsi_next;
        last_psi = psi;
        last_x = mesh.x[i + 1];
        if (trace) trace->push_back({last_x, psi, dpsi});

        // Node count on x > 0: strict sign change between successive samples;
        // an exact zero defers to the following sample.
        const int sign = psi > 0.0 ? +1 : (psi < 0.0 ? -1 : 0);
        if (sign != 0) {
            if (last_nonzero_sign != 0 && sign != last_nonzero_sign) ++result.nodes;
            last_nonzero_sign = sign;
        }

        if (std::fabs(psi) > blowup_threshold) {
            result.halted_early = true;
            break;
        }
    }

    result.x_end = last_x;
    result.terminal_log_magnitude = std::log(std::fabs(last_psi));
    result.terminal_sign = last_nonzero_sign != 0 ? last_nonzero_sign
                                                  : (psi0 >= 0.0 ? +1 : -1);
    return result;
}

ShotResult shoot(const ModelParams& p, const PotentialSpec& spec, double E,
                 Parity parity, const MeshPolicy& policy,
                 std::vector<TraceSample>* trace) {
    const Mesh mesh = build_mesh(p, E, spec, policy);
    const double psi0 = parity == Parity::even ? 1.0 : 0.0;
    const double dpsi0 = parity == Parity::even ? 0.0 : 1.0;
    return integrate_over_mesh(p, spec, E, psi0, dpsi0, mesh, policy.blowup_threshold,
                               trace);
}

} // namespace kg1d
