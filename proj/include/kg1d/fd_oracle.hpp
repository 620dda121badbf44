#ifndef KG1D_FD_ORACLE_HPP
#define KG1D_FD_ORACLE_HPP

#include <vector>

#include "kg1d/params.hpp"
#include "kg1d/potential.hpp"

namespace kg1d {

/// Uniform-grid discretization of (-D^2 + m^2 - V^2) psi + 2EV psi = E^2 psi,
/// the quadratic-in-E pencil of the wave equation.  Even parity closes the
/// x = 0 boundary by ghost-point reflection (psi_{-1} = psi_1), odd by a
/// Dirichlet zero; the outer boundary is Dirichlet at x_max.
struct OracleConfig {
    double x_max = 0;
    int n_grid = 0;  // interior unknowns, >= 50
    Parity parity = Parity::even;
};

struct OracleEigenpair {
    double E = 0;
    int nodes = 0;
    Parity parity = Parity::even;
};

struct OracleResult {
    std::vector<OracleEigenpair> states;  // real eigenvalues in (-m, m), ascending
    int complex_in_window = 0;            // discretization artifacts (fallback path)
    bool used_companion_fallback = false;
};

/// Doubled-dimension linearization of the pencil.  When m^2 - V^2 > 0 on the
/// grid the symmetric form is definite and a banded generalized eigensolve
/// returns all-real eigenvalues; otherwise a dense companion matrix
/// [[0, I], [A, B]] is used and complex eigenvalues in the window are flagged.
OracleResult oracle_spectrum(const ModelParams& p, const PotentialSpec& spec,
                             const OracleConfig& config);

struct RichardsonEstimate {
    double E = 0;               // (4 E_fine - E_coarse) / 3
    double error_estimate = 0;  // |E_fine - E_coarse| / 3
    double E_coarse = 0, E_fine = 0;
};

/// Lowest eigenvalue of the given parity at n_grid and 2 n_grid, second-order
/// extrapolated.
RichardsonEstimate oracle_lowest_richardson(const ModelParams& p, const PotentialSpec& spec,
                                            Parity parity, int n_grid, double x_max);

} // namespace kg1d

#endif
