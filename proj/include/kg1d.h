/*
 * kg1d -- bound states of the 1-d Klein-Gordon equation with cutoff Coulomb
 * potentials.  C API of the shared library: an opaque model handle carrying
 * the physical constants, tolerances and mesh policy, plus status-code entry
 * points for every solver operation.  All functions are thread safe for
 * concurrent use on distinct handles; read-only use of one handle from many
 * threads is also safe.
 */
#ifndef KG1D_H
#define KG1D_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kg1d_status {
    KG1D_OK = 0,
    KG1D_EINVAL = 1,     /* malformed call: null pointer, bad enum, bad window */
    KG1D_EDOMAIN = 2,    /* input outside the mathematical domain */
    KG1D_EBRACKET = 3,   /* no eigenvalue with the requested nodes in the window */
    KG1D_EITER = 4,      /* iteration cap exceeded */
    KG1D_EAMBIGUOUS = 5, /* integration domain too short to classify */
    KG1D_EBUFFER = 6,    /* caller buffer too small */
    KG1D_EINTERNAL = 7
} kg1d_status;

typedef enum kg1d_family { KG1D_V1 = 0, KG1D_V2 = 1 } kg1d_family;
typedef enum kg1d_parity { KG1D_EVEN = 0, KG1D_ODD = 1 } kg1d_parity;
typedef enum kg1d_branch {
    KG1D_BRANCH_UNASSIGNED = 0,
    KG1D_BRANCH_UPPER = 1,
    KG1D_BRANCH_LOWER = 2
} kg1d_branch;

typedef struct kg1d_model kg1d_model;

/* One eigen-solution in physical (a, E) and scaled (s, beta) coordinates. */
typedef struct kg1d_point {
    double a, E, s, beta;
    int parity; /* kg1d_parity */
    int nodes;
    int branch; /* kg1d_branch */
} kg1d_point;

typedef struct kg1d_shot {
    int nodes;
    double terminal_log_magnitude;
    int terminal_sign;
    int halted_early;
    double x_end;
} kg1d_shot;

typedef struct kg1d_special {
    double s0, a0;
    double s_min, a_min, E_at_min;
    double s_inf, a_inf;
    double s_inf_extrapolated;
    double s_inf_rel_diff;
    int methods_agree;
} kg1d_special;

typedef struct kg1d_doublet {
    int n;
    double a;
    double epsilon_odd, epsilon_even;
    double E_formula_odd, E_formula_even;
    double E_numeric_odd, E_numeric_even;
} kg1d_doublet;

const char* kg1d_version(void);
const char* kg1d_status_name(kg1d_status s);
/* Detail message of the most recent failure on this thread. */
const char* kg1d_last_message(void);

/* ---- model handle ------------------------------------------------------ */

/* Requires 0 < alpha <= 1/2 and mass > 0. */
kg1d_status kg1d_model_create(double alpha, double mass, kg1d_model** out);
void kg1d_model_destroy(kg1d_model* model);

double kg1d_model_alpha(const kg1d_model* model);
double kg1d_model_mass(const kg1d_model* model);
double kg1d_model_delta(const kg1d_model* model);

/* Values <= 0 keep the current setting. */
kg1d_status kg1d_model_set_tolerances(kg1d_model* model, double tol_energy_rel,
                                      double tol_cutoff_rel);
kg1d_status kg1d_model_set_mesh(kg1d_model* model, double h0, double growth,
                                double x_max_factor, double x_max_cap,
                                double blowup_threshold);
kg1d_status kg1d_model_set_threads(kg1d_model* model, int n_threads);

void kg1d_model_get_tolerances(const kg1d_model* model, double* tol_energy_rel,
                               double* tol_cutoff_rel);
void kg1d_model_get_mesh(const kg1d_model* model, double* h0, double* growth,
                         double* x_max_factor, double* x_max_cap,
                         double* blowup_threshold);

/* ---- scaled coordinates ------------------------------------------------ */

kg1d_status kg1d_s_from_a(const kg1d_model* model, double a, double* s);
kg1d_status kg1d_a_from_s(const kg1d_model* model, double s, double* a);
kg1d_status kg1d_beta_from_energy(const kg1d_model* model, double E, double* beta);
kg1d_status kg1d_energy_from_beta(const kg1d_model* model, double beta, double* E);

/* ---- potentials -------------------------------------------------------- */

kg1d_status kg1d_potential_value(const kg1d_model* model, kg1d_family family,
                                 double a, double x, double* value);
kg1d_status kg1d_potential_depth(const kg1d_model* model, kg1d_family family,
                                 double a, double* value);

/* ---- shooting ---------------------------------------------------------- */

kg1d_status kg1d_shoot(const kg1d_model* model, kg1d_family family, double a,
                       double E, kg1d_parity parity, kg1d_shot* out);

/* Trajectory samples at the mesh nodes.  If cap is too small, fails with
 * KG1D_EBUFFER and *n_needed carries the required size. */
kg1d_status kg1d_shot_trace(const kg1d_model* model, kg1d_family family, double a,
                            double E, kg1d_parity parity, double* xs, double* psis,
                            double* dpsis, size_t cap, size_t* n_needed);

/* ---- eigensolver ------------------------------------------------------- */

/* Energy bisection at fixed cutoff inside (e_lo, e_hi), single-signed. */
kg1d_status kg1d_solve_energy(const kg1d_model* model, kg1d_family family, double a,
                              kg1d_parity parity, int nodes, double e_lo, double e_hi,
                              kg1d_point* out);

/* Cutoff bisection at fixed energy; E = -mass is the threshold shot.
 * a_lo <= 0 or a_hi <= 0 selects the default window. */
kg1d_status kg1d_solve_cutoff(const kg1d_model* model, kg1d_family family, double E,
                              kg1d_parity parity, int nodes, double a_lo, double a_hi,
                              kg1d_point* out);

/* ---- curve tracing ----------------------------------------------------- */

/* Energies uniform in beta on [+beta_cap, -beta_cap], descending in E. */
kg1d_status kg1d_default_beta_grid(const kg1d_model* model, double beta_cap,
                                   size_t n, double* energies);

/* One point per grid energy (descending), branch tags assigned by position
 * relative to the minimum of a(E). */
kg1d_status kg1d_trace_energy(const kg1d_model* model, kg1d_family family,
                              const double* energies, size_t n, kg1d_point* out);

/* One point per cutoff with the branch window; cutoffs outside the branch
 * range get point_status[i] = KG1D_EBRACKET and an untouched out[i]. */
kg1d_status kg1d_trace_cutoff(const kg1d_model* model, kg1d_family family,
                              const double* cutoffs, size_t n, kg1d_branch branch,
                              kg1d_point* out, kg1d_status* point_status);

kg1d_status kg1d_special_points(const kg1d_model* model, kg1d_family family,
                                kg1d_special* out);

/* ---- Balmer doublets --------------------------------------------------- */

kg1d_status kg1d_balmer_epsilon(const kg1d_model* model, double a, int n,
                                kg1d_parity parity, double* eps);
kg1d_status kg1d_balmer_energy(const kg1d_model* model, double a, int n,
                               kg1d_parity parity, double* E);
kg1d_status kg1d_balmer_doublet(const kg1d_model* model, kg1d_family family,
                                double a, int n, kg1d_doublet* out);

/* ---- finite-difference oracle ------------------------------------------ */

kg1d_status kg1d_oracle_spectrum(const kg1d_model* model, kg1d_family family,
                                 double a, kg1d_parity parity, int n_grid,
                                 double x_max, double* energies, int* node_counts,
                                 size_t cap, size_t* n_found);

kg1d_status kg1d_oracle_lowest(const kg1d_model* model, kg1d_family family, double a,
                               kg1d_parity parity, int n_grid, double x_max,
                               double* energy_extrapolated, double* error_estimate);

#ifdef __cplusplus
}
#endif

#endif /* KG1D_H */
