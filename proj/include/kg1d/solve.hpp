#ifndef KG1D_SOLVE_HPP
#define KG1D_SOLVE_HPP

#include "kg1d/mesh.hpp"
#include "kg1d/params.hpp"
#include "kg1d/potential.hpp"
#include "kg1d/shoot.hpp"

namespace kg1d {

/// Bisection bracket.  For the energy search tol_rel terminates on
/// |hi - lo| <= tol_rel * m; the cutoff search is scale free and terminates
/// on hi - lo <= tol_rel * lo.
struct SearchWindow {
    double lo = 0.0;
    double hi = 0.0;
    double tol_rel = 0.0;  // 0 -> default (1e-12 energy, 1e-10 cutoff)
    int max_iter = 200;
};

inline constexpr double default_energy_tol_rel = 1e-12;
inline constexpr double default_cutoff_tol_rel = 1e-10;

// The cutoff search window is clamped to this range (in units of 1/m).
inline constexpr double cutoff_window_min_m = 1e-10;
inline constexpr double cutoff_window_max_m = 1e3;

SearchWindow default_cutoff_window(const ModelParams& p);

/// Which monotone node rule applies.  The count grows with E for E > 0,
/// shrinks with E for E < 0, and grows with decreasing a at fixed E.
enum class Regime { energy_positive, energy_negative, cutoff };

enum class ShotClass { too_low, too_high, candidate };

/// Maps one shot onto a bisection direction; "too low"/"too high" refer to
/// the search variable of the regime (E or a).  When the node count equals
/// the target, the side is decided by the terminal sign against the
/// asymptotic lobe sign (-1)^target of an initially positive solution.
/// Throws AmbiguousShotError when the shot neither decayed nor grew.
ShotClass classify_shot(const ShotResult& shot, int target_nodes, Regime regime);

/// Energy bisection at fixed cutoff.  The window must not straddle E = 0
/// (the node rule needs the sign); a zero endpoint is allowed.
SpectralPoint solve_energy(const ModelParams& p, const PotentialSpec& spec,
                           Parity parity, int target_nodes, SearchWindow window,
                           const MeshPolicy& policy);

/// Cutoff bisection at fixed energy, valid for either sign of E and for the
/// threshold shot E = -m.  Window endpoints <= 0 select the default window.
SpectralPoint solve_cutoff(const ModelParams& p, Family family, double E,
                           Parity parity, int target_nodes, SearchWindow window,
                           const MeshPolicy& policy);

} // namespace kg1d

#endif
