#ifndef KG1D_BALMER_HPP
#define KG1D_BALMER_HPP

#include <utility>

#include "kg1d/mesh.hpp"
#include "kg1d/params.hpp"
#include "kg1d/potential.hpp"

namespace kg1d {

/// One odd-even doublet: closed-form energies from the Balmer-like formula
/// E_n/m = {1 + (alpha/(n + eps - delta))^2}^(-1/2) next to the fully
/// numerical pair.
struct DoubletRecord {
    int n = 1;
    double a = 0;
    double epsilon_odd = 0, epsilon_even = 0;
    double E_formula_odd = 0, E_formula_even = 0;
    double E_numeric_odd = 0, E_numeric_even = 0;
};

/// Small-a corrections: eps(odd) ~ 2 alpha m a and
/// eps(even) ~ 2 / [alpha/(m a) + 2 log(n / (2 alpha m a))].
/// The even form is rejected outside its validity (log argument <= 1).
double epsilon_odd(const ModelParams& p, double a);
double epsilon_even(const ModelParams& p, double a, int n);
double epsilon(const ModelParams& p, double a, int n, Parity parity);

/// The closed form with an explicit eps (test hook: eps = delta makes
/// E_n/m = (1 + (alpha/n)^2)^(-1/2)).
double balmer_energy_with_epsilon(const ModelParams& p, int n, double eps);
double balmer_energy(const ModelParams& p, double a, int n, Parity parity);

/// Half-line interior node targets for doublet n: odd n-1 (the origin zero is
/// not a node), even n; the anomalous state holds the even 0-node slot.
/// Validated against the finite-difference oracle spectrum.
int balmer_node_target(int n, Parity parity);

/// Shooting energies for doublet n inside the window (m(1 - alpha^2), m).
std::pair<double, double> doublet_numeric(const ModelParams& p, const PotentialSpec& spec,
                                          int n, const MeshPolicy& policy);

DoubletRecord make_doublet_record(const ModelParams& p, const PotentialSpec& spec,
                                  int n, const MeshPolicy& policy);

} // namespace kg1d

#endif
