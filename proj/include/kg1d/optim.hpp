#ifndef KG1D_OPTIM_HPP
#define KG1D_OPTIM_HPP

#include <functional>

namespace kg1d {

/// Result of a golden-section minimization, including the final bracket so a
/// parabolic refinement can be attached on top.
struct GoldenResult {
    double x = 0.0;
    double f = 0.0;
    double x_lo = 0.0, f_lo = 0.0;
    double x_hi = 0.0, f_hi = 0.0;
    int evals = 0;
};

/// Minimizes f on [lo, hi] down to an absolute bracket width tol_abs.
/// Designed for expensive objectives: one evaluation per iteration.
GoldenResult golden_section_minimize(const std::function<double(double)>& f,
                                     double lo, double hi, double tol_abs,
                                     int max_iter = 200);

/// Vertex of the parabola through three points; falls back to x2 when the
/// points are collinear or the curvature is non-positive.
double parabola_vertex(double x1, double f1, double x2, double f2, double x3, double f3);

} // namespace kg1d

#endif
