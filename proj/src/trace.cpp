#include "kg1d/trace.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kg1d/errors.hpp"
#include "kg1d/optim.hpp"
#include "kg1d/parallel.hpp"

namespace kg1d {

namespace {

std::size_t argmin_a(const std::vector<SpectralPoint>& pts) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (pts[i].a < pts[best].a) best = i;
    return best;
}

void assign_branches(std::vector<SpectralPoint>& pts) {
    if (pts.empty()) return;
    const std::size_t i_min = argmin_a(pts);
    const double e_min = pts[i_min].E;
    for (auto& pt : pts) pt.branch = pt.E > e_min ? Branch::upper : Branch::lower;
}

// Polynomial extrapolation to zero through (x_k, y_k), Neville's scheme.
double neville_at_zero(const std::vector<double>& xs, const std::vector<double>& ys) {
    std::vector<double> t = ys;
    const std::size_t n = xs.size();
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = 0; i + level < n; ++i)
            t[i] = (xs[i + level] * t[i] - xs[i] * t[i + 1]) / (xs[i + level] - xs[i]);
    return t[0];
}

} // namespace

BranchCurve trace_by_energy(const ModelParams& p, Family family,
                            const std::vector<double>& E_grid,
                            const MeshPolicy& policy, const TraceOptions& opts) {
    require(!E_grid.empty(), Errc::invalid_argument, "trace_by_energy: empty grid");
    for (std::size_t i = 0; i + 1 < E_grid.size(); ++i)
        require(E_grid[i] > E_grid[i + 1], Errc::invalid_argument,
                "trace_by_energy: grid must be strictly descending in E");
    require(std::fabs(E_grid.front()) < p.m && std::fabs(E_grid.back()) < p.m,
            Errc::domain, "trace_by_energy: grid must lie inside (-m, m)");

    BranchCurve curve;
    curve.family = family;
    curve.points.resize(E_grid.size());

    parallel_for(E_grid.size(), opts.n_threads, [&](std::size_t i) {
        try {
            curve.points[i] = solve_cutoff(p, family, E_grid[i], Parity::even, 0,
                                           SearchWindow{}, policy);
        } catch (const Error& e) {
            std::ostringstream os;
            os << "trace_by_energy at E = " << E_grid[i] << ": " << e.what();
            throw Error(e.code(), os.str());
        }
    });

    assign_branches(curve.points);
    return curve;
}

CutoffTrace trace_by_cutoff(const ModelParams& p, Family family,
                            const std::vector<double>& a_grid, Branch branch,
                            const MeshPolicy& policy, const TraceOptions& opts) {
    require(branch == Branch::upper || branch == Branch::lower, Errc::invalid_argument,
            "trace_by_cutoff: branch must be upper or lower");
    for (double a : a_grid)
        require(a > 0.0, Errc::domain, "trace_by_cutoff: cutoffs must be positive");

    // Sign-split search: upper branch in (0, m), lower in (-m, 0).
    SearchWindow window;
    if (branch == Branch::upper) {
        window.lo = 0.0;
        window.hi = p.m;
    } else {
        window.lo = -p.m;
        window.hi = 0.0;
    }

    std::vector<SpectralPoint> pts(a_grid.size());
    std::vector<int> ok(a_grid.size(), 0);
    std::vector<std::string> why(a_grid.size());

    parallel_for(a_grid.size(), opts.n_threads, [&](std::size_t i) {
        const PotentialSpec spec = make_potential(family, a_grid[i], p.alpha);
        try {
            pts[i] = solve_energy(p, spec, Parity::even, 0, window, policy);
            pts[i].branch = branch;
            ok[i] = 1;
        } catch (const BracketError& e) {
            why[i] = e.what();  // no eigenvalue on this branch at this cutoff
        }
    });

    CutoffTrace result;
    result.curve.family = family;
    for (std::size_t i = 0; i < a_grid.size(); ++i) {
        if (ok[i])
            result.curve.points.push_back(pts[i]);
        else
            result.skipped.push_back({a_grid[i], why[i]});
    }
    // Order by E descending to match the energy-parametrized representation.
    std::sort(result.curve.points.begin(), result.curve.points.end(),
              [](const SpectralPoint& l, const SpectralPoint& r) { return l.E > r.E; });
    return result;
}

std::vector<double> default_beta_grid(const ModelParams& p, std::size_t n, double beta_cap) {
    require(n >= 2, Errc::invalid_argument, "default_beta_grid: need at least 2 points");
    require(beta_cap > 0.0, Errc::invalid_argument, "default_beta_grid: beta_cap > 0");
    std::vector<double> energies(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double beta = beta_cap - 2.0 * beta_cap * static_cast<double>(i) / (n - 1);
        energies[i] = E_from_beta(beta, p);
    }
    return energies;
}

SpectralPoint find_s0(const ModelParams& p, Family family, const MeshPolicy& policy) {
    return solve_cutoff(p, family, 0.0, Parity::even, 0, SearchWindow{}, policy);
}

SMinResult find_s_min(const ModelParams& p, Family family, const MeshPolicy& policy) {
    int evals = 0;
    auto a_of_E = [&](double E) {
        ++evals;
        return solve_cutoff(p, family, E, Parity::even, 0, SearchWindow{}, policy).a;
    };

    // Geometric seed grid around E = 0: the fold sits at small negative E and
    // the dip in a(E) below a(0) is narrow, so uniform seeding would miss it.
    std::vector<double> seed;
    for (double t = 0.64; t >= 0.0025 / 1.0001; t /= 4.0) seed.push_back(-t * p.m);
    seed.push_back(0.0);
    for (double t = 0.0025; t <= 0.64 * 1.0001; t *= 4.0) seed.push_back(t * p.m);

    std::vector<double> fs(seed.size());
    for (std::size_t i = 0; i < seed.size(); ++i) fs[i] = a_of_E(seed[i]);

    std::size_t k = 0;
    for (std::size_t i = 1; i < seed.size(); ++i)
        if (fs[i] < fs[k]) k = i;
    require(k > 0 && k + 1 < seed.size(), Errc::bracket_failure,
            "find_s_min: no interior bracket on the seed grid");

    GoldenResult g = golden_section_minimize(a_of_E, seed[k - 1], seed[k + 1], 1e-6 * p.m);
    evals += g.evals;

    // One parabolic refinement through the final triple.
    const double E_p = parabola_vertex(g.x_lo, g.f_lo, g.x, g.f, g.x_hi, g.f_hi);
    double E_best = g.x, a_best = g.f;
    if (E_p != g.x) {
        const double a_p = a_of_E(E_p);
        if (a_p < a_best) {
            E_best = E_p;
            a_best = a_p;
        }
    }

    SMinResult r;
    r.a_min = a_best;
    r.s_min = s_from_a(a_best, p);
    r.E_at_min = E_best;
    r.evals = evals;
    return r;
}

SInfResult find_s_inf(const ModelParams& p, Family family, const MeshPolicy& policy) {
    SInfResult r;

    // Primary: threshold shot at E = -m exactly.  The exterior coefficient
    // 2 m alpha / x - alpha^2 / x^2 stays finite, so the decaying/growing
    // dichotomy and the node rule survive at the threshold.
    const SpectralPoint shot = solve_cutoff(p, family, -p.m, Parity::even, 0,
                                            SearchWindow{}, policy);
    r.a = shot.a;
    r.s = shot.s;

    // Cross-check: a(E_k) along E_k = -m (1 - 4^-k 1e-2) extrapolated to
    // kappa = 0 through the smallest-kappa points.
    std::vector<double> kappas, as;
    for (int k = 0; k <= 6; ++k) {
        const double eta = 1e-2 * std::pow(4.0, -k);
        const double E = -p.m * (1.0 - eta);
        const double kappa = std::sqrt((p.m - E) * (p.m + E));
        const double a = solve_cutoff(p, family, E, Parity::even, 0, SearchWindow{},
                                      policy).a;
        kappas.push_back(kappa);
        as.push_back(a);
    }
    const std::size_t fit_points = 4;
    std::vector<double> xs(kappas.end() - fit_points, kappas.end());
    std::vector<double> ys(as.end() - fit_points, as.end());
    const double a_extrap = neville_at_zero(xs, ys);
    r.s_extrapolated = s_from_a(a_extrap, p);
    r.rel_diff = std::fabs(r.s_extrapolated - r.s) / r.s;
    r.agree = r.rel_diff <= 1e-2;
    return r;
}

SpecialPoints compute_special_points(const ModelParams& p, Family family,
                                     const MeshPolicy& policy) {
    SpecialPoints sp;
    const SpectralPoint p0 = find_s0(p, family, policy);
    sp.s0 = p0.s;
    sp.a0 = p0.a;

    const SMinResult sm = find_s_min(p, family, policy);
    sp.s_min = sm.s_min;
    sp.a_min = sm.a_min;
    sp.E_at_min = sm.E_at_min;

    const SInfResult si = find_s_inf(p, family, policy);
    sp.s_inf = si.s;
    sp.a_inf = si.a;
    sp.s_inf_extrapolated = si.s_extrapolated;
    sp.s_inf_rel_diff = si.rel_diff;
    sp.methods_agree = si.agree;

    require(sp.s_min < sp.s0 && sp.s0 < sp.s_inf, Errc::internal,
            "compute_special_points: ordering s_min < s0 < s_inf violated");
    return sp;
}

bool is_u_shaped(const BranchCurve& curve) {
    const auto& pts = curve.points;
    if (pts.size() < 3) return false;
    const std::size_t i_min = argmin_a(pts);
    if (i_min == 0 || i_min + 1 == pts.size()) return false;
    for (std::size_t i = 0; i + 1 <= i_min; ++i)
        if (!(pts[i].a > pts[i + 1].a)) return false;
    for (std::size_t i = i_min; i + 1 < pts.size(); ++i)
        if (!(pts[i].a < pts[i + 1].a)) return false;
    return true;
}

} // namespace kg1d
