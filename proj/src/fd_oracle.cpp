#include "kg1d/fd_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <lapacke.h>

#include "kg1d/errors.hpp"

namespace kg1d {

namespace {

// Second-difference pencil on a uniform grid: A psi + E B psi = E^2 psi with
// A = -D^2 + m^2 - V^2 and B = diag(2V).  Even parity keeps x = 0 as an
// unknown and closes it by ghost reflection psi_{-1} = psi_1; the resulting
// asymmetric first row is restored to symmetric form by the similarity
// diag(sqrt(2), 1, ..., 1), which leaves B, the eigenvalues and all sign
// patterns unchanged.
struct Pencil {
    int n = 0;
    double h = 0;
    std::vector<double> diag;     // A diagonal (symmetrized)
    std::vector<double> off;      // A subdiagonal, off[i] couples i and i+1
    std::vector<double> b;        // B diagonal
    double min_m2_minus_v2 = 0;
};

Pencil build_pencil(const ModelParams& p, const PotentialSpec& spec,
                    const OracleConfig& config) {
    const int n = config.n_grid;
    Pencil pen;
    pen.n = n;
    pen.h = config.parity == Parity::even ? config.x_max / n : config.x_max / (n + 1);
    const double h2 = pen.h * pen.h;

    pen.diag.resize(n);
    pen.off.assign(n - 1, -1.0 / h2);
    pen.b.resize(n);
    pen.min_m2_minus_v2 = std::numeric_limits<double>::max();

    for (int i = 0; i < n; ++i) {
        const double x = config.parity == Parity::even ? i * pen.h : (i + 1) * pen.h;
        const double V = potential_value(spec, x);
        const double m2v2 = (p.m - V) * (p.m + V);
        pen.min_m2_minus_v2 = std::min(pen.min_m2_minus_v2, m2v2);
        pen.diag[i] = 2.0 / h2 + m2v2;
        pen.b[i] = 2.0 * V;
    }
    if (config.parity == Parity::even && n > 1) pen.off[0] = -std::sqrt(2.0) / h2;
    return pen;
}

// Strict sign changes, ignoring entries at roundoff level relative to the
// vector's peak (eigenvector tails flicker in sign once they decay to noise).
int count_sign_changes(const std::vector<double>& v) {
    double peak = 0.0;
    for (double x : v) peak = std::max(peak, std::fabs(x));
    const double floor = 1e-8 * peak;
    int nodes = 0, last_sign = 0;
    for (double x : v) {
        if (std::fabs(x) <= floor) continue;
        const int sign = x > 0.0 ? +1 : -1;
        if (last_sign != 0 && sign != last_sign) ++nodes;
        last_sign = sign;
    }
    return nodes;
}

// Sign changes of the eigenvector belonging to eigenvalue E, recovered by
// inverse iteration on the tridiagonal T(E) = A + E B - E^2.  The computed E
// is never exactly singular in floating point, so the factorization succeeds
// and the solve is dominated by the target eigenvector.
int count_nodes(const Pencil& pen, double E) {
    const int n = pen.n;
    std::vector<double> dl(pen.off), du(pen.off), d(n), du2(std::max(0, n - 2));
    std::vector<lapack_int> ipiv(n);
    for (int i = 0; i < n; ++i) d[i] = pen.diag[i] + E * pen.b[i] - E * E;

    lapack_int info = LAPACKE_dgttrf(n, dl.data(), d.data(), du.data(), du2.data(),
                                     ipiv.data());
    if (info > 0) {
        // exactly singular pivot: nudge the shift
        const double Es = E + 1e-12 * (1.0 + std::fabs(E));
        for (int i = 0; i < n; ++i) d[i] = pen.diag[i] + Es * pen.b[i] - Es * Es;
        dl = pen.off;
        du = pen.off;
        info = LAPACKE_dgttrf(n, dl.data(), d.data(), du.data(), du2.data(), ipiv.data());
    }
    require(info == 0, Errc::internal, "fd-oracle: tridiagonal factorization failed");

    std::vector<double> v(n, 1.0);
    for (int pass = 0; pass < 2; ++pass) {
        info = LAPACKE_dgttrs(LAPACK_COL_MAJOR, 'N', n, 1, dl.data(), d.data(), du.data(),
                              du2.data(), ipiv.data(), v.data(), n);
        require(info == 0, Errc::internal, "fd-oracle: tridiagonal solve failed");
        double norm = 0.0;
        for (double x : v) norm = std::max(norm, std::fabs(x));
        require(norm > 0.0, Errc::internal, "fd-oracle: zero inverse-iteration vector");
        for (double& x : v) x /= norm;
    }

    return count_sign_changes(v);
}

// Fast path: the symmetric linearization X z = E Y z with X = [[0, A], [A, B]],
// Y = diag(A, I) and z = (psi, E psi).  With A positive definite the pencil is
// symmetric definite, all eigenvalues are real, and interleaving psi_i, phi_i
// makes both matrices banded with half bandwidth 3.
std::vector<double> banded_pencil_eigenvalues(const Pencil& pen) {
    const int n = pen.n;
    const lapack_int n2 = 2 * n;
    const lapack_int kd = 3, ldab = kd + 1;

    std::vector<double> ab(static_cast<std::size_t>(ldab) * n2, 0.0);
    std::vector<double> bb(static_cast<std::size_t>(ldab) * n2, 0.0);
    auto at = [&](std::vector<double>& m, lapack_int r, lapack_int c) -> double& {
        return m[static_cast<std::size_t>(c) * ldab + (r - c)];  // lower, col-major
    };

    for (int i = 0; i < n; ++i) {
        const lapack_int psi = 2 * i, phi = 2 * i + 1;
        at(ab, phi, psi) = pen.diag[i];  // X[phi_i, psi_i] = A_ii
        at(ab, phi, phi) = pen.b[i];     // X[phi_i, phi_i] = B_ii
        at(bb, psi, psi) = pen.diag[i];  // Y[psi_i, psi_i] = A_ii
        at(bb, phi, phi) = 1.0;
        if (i + 1 < n) {
            at(ab, 2 * i + 3, psi) = pen.off[i];  // X[phi_{i+1}, psi_i] = A_{i+1,i}
            at(ab, 2 * i + 2, phi) = pen.off[i];  // X[psi_{i+1}, phi_i] = A_{i+1,i}
            at(bb, 2 * i + 2, psi) = pen.off[i];  // Y[psi_{i+1}, psi_i]
        }
    }

    std::vector<double> w(n2), z(1);
    const lapack_int info = LAPACKE_dsbgv(LAPACK_COL_MAJOR, 'N', 'L', n2, kd, kd,
                                          ab.data(), ldab, bb.data(), ldab, w.data(),
                                          z.data(), 1);
    require(info == 0, Errc::internal, "fd-oracle: dsbgv failed");
    return w;
}

// Fallback for indefinite m^2 - V^2 (cutoffs below alpha/m, outside the
// oracle's intended range): dense companion matrix [[0, I], [A, B]] of the
// raw asymmetric pencil, complex eigenvalues in the window flagged.
void companion_fallback(const ModelParams& p, const Pencil& pen_sym,
                        const OracleConfig& config, OracleResult& result) {
    require(config.n_grid <= 2000, Errc::invalid_argument,
            "fd-oracle: companion fallback limited to n_grid <= 2000");
    const int n = pen_sym.n;
    const lapack_int n2 = 2 * n;
    const double h2 = pen_sym.h * pen_sym.h;

    // raw (unsymmetrized) A for the companion form
    std::vector<double> diag(pen_sym.diag), lower(pen_sym.off), upper(pen_sym.off);
    if (config.parity == Parity::even && n > 1) {
        upper[0] = -2.0 / h2;
        lower[0] = -1.0 / h2;
    }

    std::vector<double> M(static_cast<std::size_t>(n2) * n2, 0.0);
    auto at = [&](lapack_int r, lapack_int c) -> double& {
        return M[static_cast<std::size_t>(c) * n2 + r];
    };
    for (int i = 0; i < n; ++i) {
        at(i, n + i) = 1.0;              // top-right identity
        at(n + i, i) = diag[i];          // A
        if (i + 1 < n) {
            at(n + i, i + 1) = upper[i];
            at(n + i + 1, i) = lower[i];
        }
        at(n + i, n + i) = pen_sym.b[i]; // B
    }

    std::vector<double> wr(n2), wi(n2), vr(static_cast<std::size_t>(n2) * n2);
    lapack_int info = LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'V', n2, M.data(), n2,
                                    wr.data(), wi.data(), nullptr, 1, vr.data(), n2);
    require(info == 0, Errc::internal, "fd-oracle: dgeev failed");

    const double window = p.m * (1.0 - 1e-12);
    for (lapack_int j = 0; j < n2; ++j) {
        if (std::fabs(wr[j]) >= window) continue;
        if (std::fabs(wi[j]) > 1e-8 * p.m) {
            if (wi[j] > 0.0) ++result.complex_in_window;  // count each pair once
            continue;
        }
        const std::vector<double> psi(vr.begin() + static_cast<std::size_t>(j) * n2,
                                      vr.begin() + static_cast<std::size_t>(j) * n2 + n);
        result.states.push_back({wr[j], count_sign_changes(psi), config.parity});
    }
    std::sort(result.states.begin(), result.states.end(),
              [](const OracleEigenpair& l, const OracleEigenpair& r) { return l.E < r.E; });
}

} // namespace

OracleResult oracle_spectrum(const ModelParams& p, const PotentialSpec& spec,
                             const OracleConfig& config) {
    require(config.n_grid >= 50, Errc::invalid_argument, "fd-oracle: n_grid must be >= 50");
    require(config.x_max > 0.0, Errc::invalid_argument, "fd-oracle: x_max must be positive");

    const Pencil pen = build_pencil(p, spec, config);
    OracleResult result;

    if (pen.min_m2_minus_v2 <= 0.0) {
        result.used_companion_fallback = true;
        companion_fallback(p, pen, config, result);
        return result;
    }

    const std::vector<double> w = banded_pencil_eigenvalues(pen);
    const double window = p.m * (1.0 - 1e-12);
    for (double E : w) {
        if (std::fabs(E) >= window) continue;
        result.states.push_back({E, count_nodes(pen, E), config.parity});
    }
    return result;  // dsbgv returns ascending order
}

RichardsonEstimate oracle_lowest_richardson(const ModelParams& p, const PotentialSpec& spec,
                                            Parity parity, int n_grid, double x_max) {
    auto lowest = [&](int n) {
        const OracleResult r = oracle_spectrum(p, spec, OracleConfig{x_max, n, parity});
        require(!r.states.empty(), Errc::bracket_failure,
                "fd-oracle: no bound state in (-m, m) at this resolution");
        return r.states.front().E;
    };
    RichardsonEstimate est;
    est.E_coarse = lowest(n_grid);
    est.E_fine = lowest(2 * n_grid);
    est.E = (4.0 * est.E_fine - est.E_coarse) / 3.0;
    est.error_estimate = std::fabs(est.E_fine - est.E_coarse) / 3.0;
    return est;
}

} // namespace kg1d
