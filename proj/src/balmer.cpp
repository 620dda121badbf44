#include "kg1d/balmer.hpp"

#include <cmath>

#include "kg1d/errors.hpp"
#include "kg1d/solve.hpp"

namespace kg1d {

double epsilon_odd(const ModelParams& p, double a) {
    require(a > 0.0, Errc::domain, "epsilon_odd: a must be positive");
    return 2.0 * p.alpha * p.m * a;
}

double epsilon_even(const ModelParams& p, double a, int n) {
    require(a > 0.0, Errc::domain, "epsilon_even: a must be positive");
    require(n >= 1, Errc::invalid_argument, "epsilon_even: n must be >= 1");
    const double ma = p.m * a;
    const double log_arg = n / (2.0 * p.alpha * ma);
    require(log_arg > 1.0, Errc::domain,
            "epsilon_even: outside the small-a validity (log argument <= 1)");
    return 2.0 / (p.alpha / ma + 2.0 * std::log(log_arg));
}

double epsilon(const ModelParams& p, double a, int n, Parity parity) {
    return parity == Parity::odd ? epsilon_odd(p, a) : epsilon_even(p, a, n);
}

double balmer_energy_with_epsilon(const ModelParams& p, int n, double eps) {
    require(n >= 1, Errc::invalid_argument, "balmer_energy: n must be >= 1");
    const double q = p.alpha / (n + eps - p.delta);
    return p.m / std::sqrt(1.0 + q * q);
}

double balmer_energy(const ModelParams& p, double a, int n, Parity parity) {
    return balmer_energy_with_epsilon(p, n, epsilon(p, a, n, parity));
}

int balmer_node_target(int n, Parity parity) {
    require(n >= 1, Errc::invalid_argument, "balmer_node_target: n must be >= 1");
    return parity == Parity::odd ? n - 1 : n;
}

std::pair<double, double> doublet_numeric(const ModelParams& p, const PotentialSpec& spec,
                                          int n, const MeshPolicy& policy) {
    // All doublets have binding < alpha^2 m, so this window brackets them all
    // while excluding the anomalous state.
    SearchWindow window;
    window.lo = p.m * (1.0 - p.alpha * p.alpha);
    window.hi = p.m;
    const double E_odd = solve_energy(p, spec, Parity::odd,
                                      balmer_node_target(n, Parity::odd), window, policy).E;
    const double E_even = solve_energy(p, spec, Parity::even,
                                       balmer_node_target(n, Parity::even), window, policy).E;
    return {E_odd, E_even};
}

DoubletRecord make_doublet_record(const ModelParams& p, const PotentialSpec& spec,
                                  int n, const MeshPolicy& policy) {
    DoubletRecord rec;
    rec.n = n;
    rec.a = spec.a;
    rec.epsilon_odd = epsilon_odd(p, spec.a);
    rec.epsilon_even = epsilon_even(p, spec.a, n);
    rec.E_formula_odd = balmer_energy_with_epsilon(p, n, rec.epsilon_odd);
    rec.E_formula_even = balmer_energy_with_epsilon(p, n, rec.epsilon_even);
    const auto [E_odd, E_even] = doublet_numeric(p, spec, n, policy);
    rec.E_numeric_odd = E_odd;
    rec.E_numeric_even = E_even;
    return rec;
}

} // namespace kg1d
