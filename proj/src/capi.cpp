#include "kg1d.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "kg1d/balmer.hpp"
#include "kg1d/errors.hpp"
#include "kg1d/fd_oracle.hpp"
#include "kg1d/mesh.hpp"
#include "kg1d/params.hpp"
#include "kg1d/potential.hpp"
#include "kg1d/shoot.hpp"
#include "kg1d/solve.hpp"
#include "kg1d/trace.hpp"

using namespace kg1d;

struct kg1d_model {
    ModelParams params;
    MeshPolicy mesh;
    double tol_energy_rel = default_energy_tol_rel;
    double tol_cutoff_rel = default_cutoff_tol_rel;
    int n_threads = 0;
};

namespace {

thread_local std::string g_last_message;

kg1d_status set_message(kg1d_status s, const char* what) {
    g_last_message = what ? what : "";
    return s;
}

kg1d_status from_errc(Errc c) {
    switch (c) {
        case Errc::invalid_argument: return KG1D_EINVAL;
        case Errc::domain: return KG1D_EDOMAIN;
        case Errc::bracket_failure: return KG1D_EBRACKET;
        case Errc::iteration_limit: return KG1D_EITER;
        case Errc::ambiguous_shot: return KG1D_EAMBIGUOUS;
        case Errc::internal: return KG1D_EINTERNAL;
    }
    return KG1D_EINTERNAL;
}

template <typename Fn>
kg1d_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_message.clear();
        return KG1D_OK;
    } catch (const Error& e) {
        return set_message(from_errc(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return set_message(KG1D_EINTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return set_message(KG1D_EINTERNAL, e.what());
    } catch (...) {
        return set_message(KG1D_EINTERNAL, "unknown error");
    }
}

kg1d_status check_model(const kg1d_model* m) {
    if (!m) return set_message(KG1D_EINVAL, "null model handle");
    return KG1D_OK;
}

Family to_family(kg1d_family f) {
    require(f == KG1D_V1 || f == KG1D_V2, Errc::invalid_argument, "bad family value");
    return f == KG1D_V1 ? Family::V1 : Family::V2;
}

Parity to_parity(kg1d_parity p) {
    require(p == KG1D_EVEN || p == KG1D_ODD, Errc::invalid_argument, "bad parity value");
    return p == KG1D_EVEN ? Parity::even : Parity::odd;
}

kg1d_point to_c(const SpectralPoint& pt) {
    kg1d_point out;
    out.a = pt.a;
    out.E = pt.E;
    out.s = pt.s;
    out.beta = pt.beta;
    out.parity = pt.parity == Parity::even ? KG1D_EVEN : KG1D_ODD;
    out.nodes = pt.nodes;
    switch (pt.branch) {
        case Branch::upper: out.branch = KG1D_BRANCH_UPPER; break;
        case Branch::lower: out.branch = KG1D_BRANCH_LOWER; break;
        default: out.branch = KG1D_BRANCH_UNASSIGNED; break;
    }
    return out;
}

} // namespace

extern "C" {

const char* kg1d_version(void) { return "0.1.0"; }

const char* kg1d_status_name(kg1d_status s) {
    switch (s) {
        case KG1D_OK: return "ok";
        case KG1D_EINVAL: return "invalid argument";
        case KG1D_EDOMAIN: return "domain error";
        case KG1D_EBRACKET: return "bracket failure";
        case KG1D_EITER: return "iteration limit";
        case KG1D_EAMBIGUOUS: return "ambiguous shot";
        case KG1D_EBUFFER: return "buffer too small";
        case KG1D_EINTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* kg1d_last_message(void) { return g_last_message.c_str(); }

kg1d_status kg1d_model_create(double alpha, double mass, kg1d_model** out) {
    if (!out) return set_message(KG1D_EINVAL, "null output pointer");
    *out = nullptr;
    return guarded([&] {
        auto* model = new kg1d_model;
        model->params = make_model(alpha, mass);
        *out = model;
    });
}

void kg1d_model_destroy(kg1d_model* model) { delete model; }

double kg1d_model_alpha(const kg1d_model* m) { return m ? m->params.alpha : 0.0; }
double kg1d_model_mass(const kg1d_model* m) { return m ? m->params.m : 0.0; }
double kg1d_model_delta(const kg1d_model* m) { return m ? m->params.delta : 0.0; }

kg1d_status kg1d_model_set_tolerances(kg1d_model* m, double tol_e, double tol_a) {
    if (kg1d_status s = check_model(m)) return s;
    if (tol_e > 0.0) m->tol_energy_rel = tol_e;
    if (tol_a > 0.0) m->tol_cutoff_rel = tol_a;
    return KG1D_OK;
}

kg1d_status kg1d_model_set_mesh(kg1d_model* m, double h0, double growth,
                                double x_max_factor, double x_max_cap,
                                double blowup_threshold) {
    if (kg1d_status s = check_model(m)) return s;
    return guarded([&] {
        MeshPolicy next = m->mesh;
        if (h0 > 0.0) next.h0 = h0;
        if (growth > 0.0) next.growth = growth;
        if (x_max_factor > 0.0) next.x_max_factor = x_max_factor;
        if (x_max_cap > 0.0) next.x_max_cap = x_max_cap;
        if (blowup_threshold > 0.0) next.blowup_threshold = blowup_threshold;
        require(next.growth >= 1.0 && next.growth <= 1.1, Errc::invalid_argument,
                "growth must lie in [1, 1.1]");
        require(next.x_max_factor >= 10.0, Errc::invalid_argument,
                "x_max_factor must be >= 10");
        m->mesh = next;
    });
}

kg1d_status kg1d_model_set_threads(kg1d_model* m, int n_threads) {
    if (kg1d_status s = check_model(m)) return s;
    m->n_threads = n_threads > 0 ? n_threads : 0;
    return KG1D_OK;
}

void kg1d_model_get_tolerances(const kg1d_model* m, double* tol_e, double* tol_a) {
    if (!m) return;
    if (tol_e) *tol_e = m->tol_energy_rel;
    if (tol_a) *tol_a = m->tol_cutoff_rel;
}

void kg1d_model_get_mesh(const kg1d_model* m, double* h0, double* growth,
                         double* x_max_factor, double* x_max_cap,
                         double* blowup_threshold) {
    if (!m) return;
    if (h0) *h0 = m->mesh.h0;
    if (growth) *growth = m->mesh.growth;
    if (x_max_factor) *x_max_factor = m->mesh.x_max_factor;
    if (x_max_cap) *x_max_cap = resolve_x_max_cap(m->mesh, m->params);
    if (blowup_threshold) *blowup_threshold = m->mesh.blowup_threshold;
}

kg1d_status kg1d_s_from_a(const kg1d_model* m, double a, double* s) {
    if (kg1d_status st = check_model(m)) return st;
    if (!s) return set_message(KG1D_EINVAL, "null output pointer");
    return guarded([&] { *s = s_from_a(a, m->params); });
}

kg1d_status kg1d_a_from_s(const kg1d_model* m, double s, double* a) {
    if (kg1d_status st = check_model(m)) return st;
    if (!a) return set_message(KG1D_EINVAL, "null output pointer");
    return guarded([&] { *a = a_from_s(s, m->params); });
}

kg1d_status kg1d_beta_from_energy(const kg1d_model* m, double E, double* beta) {
    if (kg1d_status st = check_model(m)) return st;
    if (!beta) return set_message(KG1D_EINVAL, "null output pointer");
    return guarded([&] { *beta = beta_from_E(E, m->params); });
}

kg1d_status kg1d_energy_from_beta(const kg1d_model* m, double beta, double* E) {
    if (kg1d_status st = check_model(m)) return st;
    if (!E) return set_message(KG1D_EINVAL, "null output pointer");
    return guarded([&] { *E = E_from_beta(beta, m->params); });
}

kg1d_status kg1d_potential_value(const kg1d_model* m, kg1d_family family, double a,
                                 double x, double* value) {
    if (kg1d_status st = check_model(m)) return st;
    if (!value) return set_message(KG1D_EINVAL, "null output pointer");
    return guarded([&] {
        *value = potential_value(make_potential(to_family(family), a, m->params), x);
    });
}

kg1d_status kg1d_potential_depth(const kg1d_model* m, kg1d_family family, double a,
                                 double* value) {
    if (kg1d_status st = check_model(m)) return st;
    if (!value) return set_message(KG1D_EINVAL, "null output pointer");
    return guarded([&] {
        *value = depth(make_potential(to_family(family), a, m->params));
    });
}

kg1d_status kg1d_shoot(const kg1d_model* m, kg1d_family family, double a, double E,
                       kg1d_parity parity, kg1d_shot* out) {
    if (kg1d_status st = check_model(m)) return st;
    if (!out) return set_message(KG1D_EINVAL, "null output pointer");
    return guarded([&] {
        const auto spec = make_potential(to_family(family), a, m->params);
        const ShotResult r = shoot(m->params, spec, E, to_parity(parity), m->mesh);
        out->nodes = r.nodes;
        out->terminal_log_magnitude = r.terminal_log_magnitude;
        out->terminal_sign = r.terminal_sign;
        out->halted_early = r.halted_early ? 1 : 0;
        out->x_end = r.x_end;
    });
}

kg1d_status kg1d_shot_trace(const kg1d_model* m, kg1d_family family, double a, double E,
                            kg1d_parity parity, double* xs, double* psis, double* dpsis,
                            size_t cap, size_t* n_needed) {
    if (kg1d_status st = check_model(m)) return st;
    if (!n_needed) return set_message(KG1D_EINVAL, "null n_needed pointer");
    kg1d_status status = KG1D_OK;
    kg1d_status g = guarded([&] {
        const auto spec = make_potential(to_family(family), a, m->params);
        std::vector<TraceSample> trace;
        shoot(m->params, spec, E, to_parity(parity), m->mesh, &trace);
        *n_needed = trace.size();
        if (trace.size() > cap) {
            status = set_message(KG1D_EBUFFER, "trace buffer too small");
            return;
        }
        if (!xs || !psis || !dpsis) {
            status = set_message(KG1D_EINVAL, "null trace buffers");
            return;
        }
        for (std::size_t i = 0; i < trace.size(); ++i) {
            xs[i] = trace[i].x;
            psis[i] = trace[i].psi;
            dpsis[i] = trace[i].dpsi;
        }
    });
    return g != KG1D_OK ? g : status;
}

kg1d_status kg1d_solve_energy(const kg1d_model* m, kg1d_family family, double a,
                              kg1d_parity parity, int nodes, double e_lo, double e_hi,
                              kg1d_point* out) {
    if (kg1d_status st = check_model(m)) return st;
    if (!out) return set_message(KG1D_EINVAL, "null output pointer");
    return guarded([&] {
        const auto spec = make_potential(to_family(family), a, m->params);
        SearchWindow window{e_lo, e_hi, m->tol_energy_rel, 200};
        *out = to_c(solve_energy(m->params, spec, to_parity(parity), nodes, window,
                                 m->mesh));
    });
}

kg1d_status kg1d_solve_cutoff(const kg1d_model* m, kg1d_family family, double E,
                              kg1d_parity parity, int nodes, double a_lo, double a_hi,
                              kg1d_point* out) {
    if (kg1d_status st = check_model(m)) return st;
    if (!out) return set_message(KG1D_EINVAL, "null output pointer");
    return guarded([&] {
        SearchWindow window{a_lo, a_hi, m->tol_cutoff_rel, 200};
        *out = to_c(solve_cutoff(m->params, to_family(family), E, to_parity(parity),
                                 nodes, window, m->mesh));
    });
}

kg1d_status kg1d_default_beta_grid(const kg1d_model* m, double beta_cap, size_t n,
                                   double* energies) {
    if (kg1d_status st = check_model(m)) return st;
    if (!energies) return set_message(KG1D_EINVAL, "null output pointer");
    return guarded([&] {
        const auto grid = default_beta_grid(m->params, n, beta_cap);
        std::memcpy(energies, grid.data(), grid.size() * sizeof(double));
    });
}

kg1d_status kg1d_trace_energy(const kg1d_model* m, kg1d_family family,
                              const double* energies, size_t n, kg1d_point* out) {
    if (kg1d_status st = check_model(m)) return st;
    if (!energies || !out) return set_message(KG1D_EINVAL, "null pointer");
    return guarded([&] {
        const std::vector<double> grid(energies, energies + n);
        TraceOptions opts;
        opts.n_threads = m->n_threads;
        const BranchCurve curve = trace_by_energy(m->params, to_family(family), grid,
                                                  m->mesh, opts);
        for (size_t i = 0; i < curve.points.size(); ++i) out[i] = to_c(curve.points[i]);
    });
}

kg1d_status kg1d_trace_cutoff(const kg1d_model* m, kg1d_family family,
                              const double* cutoffs, size_t n, kg1d_branch branch,
                              kg1d_point* out, kg1d_status* point_status) {
    if (kg1d_status st = check_model(m)) return st;
    if (!cutoffs || !out || !point_status)
        return set_message(KG1D_EINVAL, "null pointer");
    return guarded([&] {
        require(branch == KG1D_BRANCH_UPPER || branch == KG1D_BRANCH_LOWER,
                Errc::invalid_argument, "branch must be upper or lower");
        const Branch br = branch == KG1D_BRANCH_UPPER ? Branch::upper : Branch::lower;
        TraceOptions opts;
        opts.n_threads = m->n_threads;
        const std::vector<double> grid(cutoffs, cutoffs + n);
        const CutoffTrace trace = trace_by_cutoff(m->params, to_family(family), grid, br,
                                                  m->mesh, opts);
        for (size_t i = 0; i < n; ++i) point_status[i] = KG1D_EBRACKET;
        for (const SpectralPoint& pt : trace.curve.points) {
            // map each solved point back to its grid slot
            for (size_t i = 0; i < n; ++i) {
                if (cutoffs[i] == pt.a) {
                    out[i] = to_c(pt);
                    point_status[i] = KG1D_OK;
                    break;
                }
            }
        }
    });
}

kg1d_status kg1d_special_points(const kg1d_model* m, kg1d_family family,
                                kg1d_special* out) {
    if (kg1d_status st = check_model(m)) return st;
    if (!out) return set_message(KG1D_EINVAL, "null output pointer");
    return guarded([&] {
        const SpecialPoints sp = compute_special_points(m->params, to_family(family),
                                                        m->mesh);
        out->s0 = sp.s0;
        out->a0 = sp.a0;
        out->s_min = sp.s_min;
        out->a_min = sp.a_min;
        out->E_at_min = sp.E_at_min;
        out->s_inf = sp.s_inf;
        out->a_inf = sp.a_inf;
        out->s_inf_extrapolated = sp.s_inf_extrapolated;
        out->s_inf_rel_diff = sp.s_inf_rel_diff;
        out->methods_agree = sp.methods_agree ? 1 : 0;
    });
}

kg1d_status kg1d_balmer_epsilon(const kg1d_model* m, double a, int n,
                                kg1d_parity parity, double* eps) {
    if (kg1d_status st = check_model(m)) return st;
    if (!eps) return set_message(KG1D_EINVAL, "null output pointer");
    return guarded([&] { *eps = epsilon(m->params, a, n, to_parity(parity)); });
}

kg1d_status kg1d_balmer_energy(const kg1d_model* m, double a, int n,
                               kg1d_parity parity, double* E) {
    if (kg1d_status st = check_model(m)) return st;
    if (!E) return set_message(KG1D_EINVAL, "null output pointer");
    return guarded([&] { *E = balmer_energy(m->params, a, n, to_parity(parity)); });
}

kg1d_status kg1d_balmer_doublet(const kg1d_model* m, kg1d_family family, double a,
                                int n, kg1d_doublet* out) {
    if (kg1d_status st = check_model(m)) return st;
    if (!out) return set_message(KG1D_EINVAL, "null output pointer");
    return guarded([&] {
        const auto spec = make_potential(to_family(family), a, m->params);
        const DoubletRecord rec = make_doublet_record(m->params, spec, n, m->mesh);
        out->n = rec.n;
        out->a = rec.a;
        out->epsilon_odd = rec.epsilon_odd;
        out->epsilon_even = rec.epsilon_even;
        out->E_formula_odd = rec.E_formula_odd;
        out->E_formula_even = rec.E_formula_even;
        out->E_numeric_odd = rec.E_numeric_odd;
        out->E_numeric_even = rec.E_numeric_even;
    });
}

kg1d_status kg1d_oracle_spectrum(const kg1d_model* m, kg1d_family family, double a,
                                 kg1d_parity parity, int n_grid, double x_max,
                                 double* energies, int* node_counts, size_t cap,
                                 size_t* n_found) {
    if (kg1d_status st = check_model(m)) return st;
    if (!n_found) return set_message(KG1D_EINVAL, "null n_found pointer");
    kg1d_status status = KG1D_OK;
    kg1d_status g = guarded([&] {
        const auto spec = make_potential(to_family(family), a, m->params);
        const OracleResult r = oracle_spectrum(m->params, spec,
                                               OracleConfig{x_max, n_grid, to_parity(parity)});
        *n_found = r.states.size();
        if (r.states.size() > cap) {
            status = set_message(KG1D_EBUFFER, "spectrum buffer too small");
            return;
        }
        if (!energies || !node_counts) {
            status = set_message(KG1D_EINVAL, "null spectrum buffers");
            return;
        }
        for (std::size_t i = 0; i < r.states.size(); ++i) {
            energies[i] = r.states[i].E;
            node_counts[i] = r.states[i].nodes;
        }
    });
    return g != KG1D_OK ? g : status;
}

kg1d_status kg1d_oracle_lowest(const kg1d_model* m, kg1d_family family, double a,
                               kg1d_parity parity, int n_grid, double x_max,
                               double* energy_extrapolated, double* error_estimate) {
    if (kg1d_status st = check_model(m)) return st;
    if (!energy_extrapolated || !error_estimate)
        return set_message(KG1D_EINVAL, "null output pointer");
    return guarded([&] {
        const auto spec = make_potential(to_family(family), a, m->params);
        const RichardsonEstimate est = oracle_lowest_richardson(m->params, spec,
                                                                to_parity(parity),
                                                                n_grid, x_max);
        *energy_extrapolated = est.E;
        *error_estimate = est.error_estimate;
    });
}

} // extern "C"
