#include "kg1d/solve.hpp"

#include <cmath>
#include <sstream>

#include "kg1d/errors.hpp"

namespace kg1d {

namespace {

// A shot whose terminal magnitude is below this has genuinely decayed: the
// growing-mode admixture is far below anything the tolerance can resolve.
const double ln_decayed = std::log(1e-3);
// Above this the growing mode dominates and the terminal sign is reliable.
const double ln_grown = std::log(10.0);

std::string describe(const ShotResult& s) {
    std::ostringstream os;
    os << "nodes=" << s.nodes << " log|psi|=" << s.terminal_log_magnitude
       << " sign=" << s.terminal_sign << " halted=" << (s.halted_early ? 1 : 0)
       << " x_end=" << s.x_end;
    return os.str();
}

} // namespace

SearchWindow default_cutoff_window(const ModelParams& p) {
    return SearchWindow{cutoff_window_min_m / p.m, cutoff_window_max_m / p.m,
                        default_cutoff_tol_rel, 200};
}

// The monotone node rules, from shooting experience with this equation:
//   E > 0: too many nodes -> E too high; blow-up without the requisite
//          nodes -> E too low  (the usual Sturm-Liouville behaviour).
//   E < 0: the direction flips: too many nodes -> E too low.
//   a-search at fixed E: nodes increase with decreasing a, either sign of E.
// When the count equals the target the side is read off the terminal sign:
// an initially positive solution diverging on the same side as its last lobe,
// sign (-1)^target, has not yet crossed the eigenvalue in the direction that
// adds a node.
ShotClass classify_shot(const ShotResult& shot, int target_nodes, Regime regime) {
    if (shot.nodes != target_nodes) {
        const bool too_many = shot.nodes > target_nodes;
        switch (regime) {
            case Regime::energy_positive:
                return too_many ? ShotClass::too_high : ShotClass::too_low;
            case Regime::energy_negative:
            case Regime::cutoff:
                return too_many ? ShotClass::too_low : ShotClass::too_high;
        }
    }

    if (!shot.halted_early && shot.terminal_log_magnitude < ln_decayed)
        return ShotClass::candidate;

    if (shot.halted_early || shot.terminal_log_magnitude > ln_grown) {
        const int lobe_sign = (target_nodes % 2 == 0) ? +1 : -1;
        const bool same_side = shot.terminal_sign == lobe_sign;
        switch (regime) {
            case Regime::energy_positive:
                return same_side ? ShotClass::too_low : ShotClass::too_high;
            case Regime::energy_negative:
            case Regime::cutoff:
                return same_side ? ShotClass::too_high : ShotClass::too_low;
        }
    }

    throw AmbiguousShotError("ambiguous shot (" + describe(shot) +
                             "): x_max must be enlarged");
}

namespace {

struct ClassifiedShot {
    ShotClass cls;
    ShotResult shot;
};

// Shoot-and-classify with automatic domain enlargement on ambiguity.  The
// enlarged policy is kept for the remainder of the search: if one shot needed
// the longer domain, its neighbours will too.
class ShotClassifier {
public:
    ShotClassifier(const ModelParams& p, Parity parity, int target, Regime regime,
                   const MeshPolicy& policy)
        : p_(p), parity_(parity), target_(target), regime_(regime), policy_(policy) {}

    ClassifiedShot operator()(const PotentialSpec& spec, double E) {
        for (int attempt = 0;; ++attempt) {
            ShotResult shot = shoot(p_, spec, E, parity_, policy_);
            try {
                return {classify_shot(shot, target_, regime_), shot};
            } catch (const AmbiguousShotError&) {
                if (attempt >= 3) throw;
                policy_.x_max_factor *= 2.0;
            }
        }
    }

    // A bisection can converge to a point where the missing node crosses the
    // end of the integration domain rather than to an eigenvalue.  A true
    // eigenvalue keeps the endpoint classifications when the domain grows; a
    // moving classification boundary does not.
    bool confirms_bracket(const PotentialSpec& lo_spec, double lo_E,
                          const PotentialSpec& hi_spec, double hi_E) {
        MeshPolicy longer = policy_;
        longer.x_max_factor *= 1.5;
        longer.x_max_cap = 1.5 * resolve_x_max_cap(policy_, p_);
        ShotClassifier check(p_, parity_, target_, regime_, longer);
        const ShotClass lo = check(lo_spec, lo_E).cls;
        const ShotClass hi = check(hi_spec, hi_E).cls;
        return (lo == ShotClass::too_low || lo == ShotClass::candidate) &&
               (hi == ShotClass::too_high || hi == ShotClass::candidate);
    }

    const MeshPolicy& policy() const { return policy_; }

private:
    const ModelParams& p_;
    Parity parity_;
    int target_;
    Regime regime_;
    MeshPolicy policy_;
};

[[noreturn]] void bracket_fail(const char* var, double lo, double hi, int target,
                               const ClassifiedShot& clo, const ClassifiedShot& chi) {
    std::ostringstream os;
    os << "no eigenvalue with " << target << " nodes in " << var << " window [" << lo
       << ", " << hi << "]: endpoints classify " << (clo.cls == ShotClass::too_low ? "low" : "high")
       << "/" << (chi.cls == ShotClass::too_low ? "low" : "high");
    throw BracketError(os.str(), lo, hi);
}

} // namespace

SpectralPoint solve_energy(const ModelParams& p, const PotentialSpec& spec,
                           Parity parity, int target_nodes, SearchWindow window,
                           const MeshPolicy& policy) {
    require(target_nodes >= 0, Errc::invalid_argument, "solve_energy: nodes must be >= 0");
    double lo = window.lo, hi = window.hi;
    require(lo < hi && std::fabs(lo) <= p.m && std::fabs(hi) <= p.m,
            Errc::invalid_argument, "solve_energy: window must satisfy -m <= lo < hi <= m");
    require(!(lo < 0.0 && hi > 0.0), Errc::invalid_argument,
            "solve_energy: window must not straddle E = 0 (the node rule needs the "
            "sign); use solve_cutoff for sign-crossing searches");
    const double tol = window.tol_rel > 0.0 ? window.tol_rel : default_energy_tol_rel;
    const Regime regime =
        (lo + hi) < 0.0 ? Regime::energy_negative : Regime::energy_positive;

    ShotClassifier classify(p, parity, target_nodes, regime, policy);

    ClassifiedShot clo = classify(spec, lo);
    if (clo.cls == ShotClass::candidate)
        return make_spectral_point(spec.a, lo, parity, target_nodes, p);
    ClassifiedShot chi = classify(spec, hi);
    if (chi.cls == ShotClass::candidate)
        return make_spectral_point(spec.a, hi, parity, target_nodes, p);
    if (clo.cls != ShotClass::too_low || chi.cls != ShotClass::too_high)
        bracket_fail("E", lo, hi, target_nodes, clo, chi);

    int iter = 0;
    while (hi - lo > tol * p.m) {
        if (++iter > window.max_iter)
            throw IterationLimitError("solve_energy: iteration cap exceeded");
        const double mid = 0.5 * (lo + hi);
        const ClassifiedShot c = classify(spec, mid);
        if (c.cls == ShotClass::candidate) return make_spectral_point(spec.a, mid, parity,
                                                                      target_nodes, p);
        (c.cls == ShotClass::too_low ? lo : hi) = mid;
    }
    if (!classify.confirms_bracket(spec, lo, spec, hi)) {
        std::ostringstream os;
        os << "no eigenvalue with " << target_nodes << " nodes in E window [" << window.lo
           << ", " << window.hi << "]: the converged point does not persist under domain "
           << "enlargement";
        throw BracketError(os.str(), window.lo, window.hi);
    }
    return make_spectral_point(spec.a, 0.5 * (lo + hi), parity, target_nodes, p);
}

SpectralPoint solve_cutoff(const ModelParams& p, Family family, double E,
                           Parity parity, int target_nodes, SearchWindow window,
                           const MeshPolicy& policy) {
    require(target_nodes >= 0, Errc::invalid_argument, "solve_cutoff: nodes must be >= 0");
    require(std::fabs(E) < p.m || E == -p.m, Errc::domain,
            "solve_cutoff: E must lie in (-m, m) or be the threshold -m");

    const SearchWindow defaults = default_cutoff_window(p);
    double lo = window.lo > 0.0 ? window.lo : defaults.lo;
    double hi = window.hi > 0.0 ? window.hi : defaults.hi;
    lo = std::max(lo, defaults.lo);
    hi = std::min(hi, defaults.hi);
    require(lo < hi, Errc::invalid_argument, "solve_cutoff: empty window after clamping");
    const double lo0 = lo, hi0 = hi;
    const double tol = window.tol_rel > 0.0 ? window.tol_rel : default_cutoff_tol_rel;

    ShotClassifier classify(p, parity, target_nodes, Regime::cutoff, policy);
    auto at = [&](double a) { return classify(make_potential(family, a, p.alpha), E); };

    ClassifiedShot clo = at(lo);
    if (clo.cls == ShotClass::candidate)
        return make_spectral_point(lo, E, parity, target_nodes, p);
    ClassifiedShot chi = at(hi);
    if (chi.cls == ShotClass::candidate)
        return make_spectral_point(hi, E, parity, target_nodes, p);
    if (clo.cls != ShotClass::too_low || chi.cls != ShotClass::too_high)
        bracket_fail("a", lo, hi, target_nodes, clo, chi);

    // Geometric midpoints: the window spans many decades and a is scale free.
    int iter = 0;
    while (hi - lo > tol * lo) {
        if (++iter > window.max_iter)
            throw IterationLimitError("solve_cutoff: iteration cap exceeded");
        const double mid = std::sqrt(lo * hi);
        const ClassifiedShot c = classify(make_potential(family, mid, p.alpha), E);
        if (c.cls == ShotClass::candidate)
            return make_spectral_point(mid, E, parity, target_nodes, p);
        (c.cls == ShotClass::too_low ? lo : hi) = mid;
    }
    if (!classify.confirms_bracket(make_potential(family, lo, p.alpha), E,
                                   make_potential(family, hi, p.alpha), E)) {
        std::ostringstream os;
        os << "no eigenvalue with " << target_nodes << " nodes in a window [" << lo0
           << ", " << hi0 << "]: the point converged to (a ~ " << lo
           << ") does not persist under domain enlargement";
        throw BracketError(os.str(), lo0, hi0);
    }
    return make_spectral_point(std::sqrt(lo * hi), E, parity, target_nodes, p);
}

} // namespace kg1d
