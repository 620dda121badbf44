#ifndef KG1D_PARAMS_HPP
#define KG1D_PARAMS_HPP

#include <string>

namespace kg1d {

inline constexpr double default_alpha = 1.0 / 137.0;

enum class Parity { even, odd };
enum class Branch { unassigned, upper, lower };

const char* to_string(Parity p);
const char* to_string(Branch b);

/// Physical constants of the model (units hbar = c = 1) together with the
/// derived parameter delta = 1/2 - sqrt(1/4 - alpha^2).
struct ModelParams {
    double alpha = default_alpha;
    double m = 1.0;
    double delta = 0.0;
};

/// delta evaluated in the cancellation-free form alpha^2 / (1/2 + sqrt(1/4 - alpha^2)).
double delta_from_alpha(double alpha);

/// Validates 0 < alpha <= 1/2 and m > 0, fills delta.
ModelParams make_model(double alpha, double m);

/// A converged eigen-solution in both physical (a, E) and scaled (s, beta)
/// coordinates. s = m a / delta, beta = alpha E / (delta sqrt(m^2 - E^2)).
struct SpectralPoint {
    double a = 0.0;
    double E = 0.0;
    double s = 0.0;
    double beta = 0.0;
    Parity parity = Parity::even;
    int nodes = 0;
    Branch branch = Branch::unassigned;
};

double s_from_a(double a, const ModelParams& p);
double a_from_s(double s, const ModelParams& p);

/// Strictly increasing and odd in E; rejects |E| >= m (and |E| within
/// 1e-14 * m of the threshold, where sqrt(m^2 - E^2) is ill-conditioned).
double beta_from_E(double E, const ModelParams& p);
double E_from_beta(double beta, const ModelParams& p);

/// Fills the scaled fields of a point from (a, E); E == -m maps beta to -inf
/// (threshold shots, see the curve tracer).
SpectralPoint make_spectral_point(double a, double E, Parity parity, int nodes,
                                  const ModelParams& p);

} // namespace kg1d

#endif
