#include "kg1d/optim.hpp"

#include <cmath>

#include "kg1d/errors.hpp"

namespace kg1d {

GoldenResult golden_section_minimize(const std::function<double(double)>& f,
                                     double lo, double hi, double tol_abs,
                                     int max_iter) {
    require(lo < hi, Errc::invalid_argument, "golden_section_minimize: lo < hi required");
    require(tol_abs > 0.0, Errc::invalid_argument, "golden_section_minimize: tol_abs > 0");

    static const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;   // 0.618...
    static const double invphi2 = (3.0 - std::sqrt(5.0)) / 2.0;  // 0.382...

    double a = lo, b = hi;
    double x1 = a + invphi2 * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    double fa = f(a), fb = f(b);
    int evals = 4;

    int iter = 0;
    while (b - a > tol_abs) {
        if (++iter > max_iter)
            throw IterationLimitError("golden_section_minimize: iteration cap exceeded");
        if (f1 < f2) {
            b = x2;
            fb = f2;
            x2 = x1;
            f2 = f1;
            x1 = a + invphi2 * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            fa = f1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
        ++evals;
    }

    GoldenResult r;
    if (f1 < f2) {
        r.x = x1;
        r.f = f1;
        r.x_lo = a;
        r.f_lo = fa;
        r.x_hi = x2;
        r.f_hi = f2;
    } else {
        r.x = x2;
        r.f = f2;
        r.x_lo = x1;
        r.f_lo = f1;
        r.x_hi = b;
        r.f_hi = fb;
    }
    r.evals = evals;
    return r;
}

double parabola_vertex(double x1, double f1, double x2, double f2, double x3, double f3) {
    const double d21 = (f2 - f1) / (x2 - x1);
    const double d32 = (f3 - f2) / (x3 - x2);
    const double curvature = (d32 - d21) / (x3 - x1);
    if (!(curvature > 0.0)) return x2;
    const double vertex = 0.5 * (x1 + x2 - d21 / curvature);
    // Distrust vertices outside the bracket.
    if (vertex < std::min(x1, x3) || vertex > std::max(x1, x3)) return x2;
    return vertex;
}

} // namespace kg1d
