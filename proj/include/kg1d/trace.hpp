#ifndef KG1D_TRACE_HPP
#define KG1D_TRACE_HPP

#include <optional>
#include <string>
#include <vector>

#include "kg1d/mesh.hpp"
#include "kg1d/params.hpp"
#include "kg1d/potential.hpp"
#include "kg1d/solve.hpp"

namespace kg1d {

/// Special points of the beta(s) curve: beta(s0) = 0, the fold minimum s_min,
/// and the supercritical endpoint s_inf where E -> -m.
struct SpecialPoints {
    double s0 = 0, a0 = 0;
    double s_min = 0, a_min = 0, E_at_min = 0;
    double s_inf = 0, a_inf = 0;
    // cross-check of the threshold shot against near-threshold extrapolation
    double s_inf_extrapolated = 0;
    double s_inf_rel_diff = 0;
    bool methods_agree = true;
};

/// One branch-tagged pass over the anomalous even ground state, ordered by
/// E descending.  a(E) along the list is U-shaped with a single interior
/// minimum; points above the minimum in E are the upper branch.
struct BranchCurve {
    Family family = Family::V1;
    std::vector<SpectralPoint> points;
    std::optional<SpecialPoints> special;
};

struct TraceOptions {
    int n_threads = 0;  // 0 -> KG1D_THREADS / hardware
};

/// Energies descending within (-m, m); one cutoff search per grid energy.
/// Robust on both branches and through the fold.  Bracket failures propagate
/// with the offending E attached.
BranchCurve trace_by_energy(const ModelParams& p, Family family,
                            const std::vector<double>& E_grid,
                            const MeshPolicy& policy, const TraceOptions& opts = {});

struct CutoffTrace {
    BranchCurve curve;
    struct Skip {
        double a;
        std::string reason;
    };
    std::vector<Skip> skipped;  // cutoffs with no eigenvalue in the branch window
};

/// Energy bisection per cutoff with the branch-appropriate window
/// ((0, m) upper, (-m, 0) lower); suitable for the large-scale curve away
/// from the fold, where each branch has a single-signed energy.
CutoffTrace trace_by_cutoff(const ModelParams& p, Family family,
                            const std::vector<double>& a_grid, Branch branch,
                            const MeshPolicy& policy, const TraceOptions& opts = {});

/// Grid of energies uniform in beta on [+beta_cap, -beta_cap], descending in
/// E, matched to the curve's visual structure for figure output.
std::vector<double> default_beta_grid(const ModelParams& p, std::size_t n,
                                      double beta_cap = 1e3);

/// Cutoff search at E = 0 exactly: no interpolation error in s0.
SpectralPoint find_s0(const ModelParams& p, Family family, const MeshPolicy& policy);

struct SMinResult {
    double s_min = 0, a_min = 0, E_at_min = 0;
    int evals = 0;
};

/// Minimizes a(E) by golden section (absolute E tolerance 1e-6 m) seeded by a
/// geometric E grid around 0, with one parabolic refinement.
SMinResult find_s_min(const ModelParams& p, Family family, const MeshPolicy& policy);

struct SInfResult {
    double s = 0, a = 0;             // threshold shot at E = -m (primary)
    double s_extrapolated = 0;       // polynomial extrapolation in kappa -> 0
    double rel_diff = 0;
    bool agree = true;               // within 1e-2 relative
};

SInfResult find_s_inf(const ModelParams& p, Family family, const MeshPolicy& policy);

SpecialPoints compute_special_points(const ModelParams& p, Family family,
                                     const MeshPolicy& policy);

/// Exactly one interior minimum of a(E) and strict monotonicity either side.
bool is_u_shaped(const BranchCurve& curve);

} // namespace kg1d

#endif
