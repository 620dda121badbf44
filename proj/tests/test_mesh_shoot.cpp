#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "kg1d/errors.hpp"
#include "kg1d/fd_oracle.hpp"
#include "kg1d/mesh.hpp"
#include "kg1d/shoot.hpp"
#include "kg1d/solve.hpp"

using namespace kg1d;

namespace {
const ModelParams P = make_model(default_alpha, 1.0);
}

TEST_CASE("mesh domain length follows kappa and the cap") {
    const PotentialSpec spec = make_potential(Family::V1, 1e-3, P);
    MeshPolicy policy;
    policy.x_max_factor = 25.0;
    CHECK(build_mesh(P, 0.0, spec, policy).x_max() == 25.0);  // kappa = m

    // near threshold kappa ~ 1e-3: the cap decides
    const double E = P.m - 5e-7;
    policy.x_max_factor = 30.0;
    CHECK(build_mesh(P, E, spec, policy).x_max() == doctest::Approx(3e4).epsilon(1e-6));
    policy.x_max_cap = 1e4;
    CHECK(build_mesh(P, E, spec, policy).x_max() == 1e4);

    // threshold shots use the cap outright
    policy.x_max_cap = 0.0;
    CHECK(build_mesh(P, -P.m, spec, policy).x_max() == 1e6);
}

TEST_CASE("V2 kink is an exact mesh node") {
    const double a = 1e-4;
    const PotentialSpec spec = make_potential(Family::V2, a, P);
    const Mesh mesh = build_mesh(P, 0.0, spec, MeshPolicy{});
    CHECK(std::find(mesh.x.begin(), mesh.x.end(), a) != mesh.x.end());
}

TEST_CASE("mesh is strictly increasing with bounded growth") {
    const PotentialSpec spec = make_potential(Family::V1, 5e-5, P);
    MeshPolicy policy;
    const Mesh mesh = build_mesh(P, -0.5, spec, policy);
    REQUIRE(mesh.x.size() >= 2);
    CHECK(mesh.x.front() == 0.0);
    for (std::size_t i = 0; i + 1 < mesh.x.size(); ++i) {
        CHECK(mesh.x[i + 1] > mesh.x[i]);
        if (i + 2 < mesh.x.size()) {
            const double ratio = (mesh.x[i + 2] - mesh.x[i + 1]) / (mesh.x[i + 1] - mesh.x[i]);
            CHECK(ratio < policy.growth * 1.0001);
        }
    }

    CHECK_THROWS_AS(build_mesh(P, 1.5 * P.m, spec, policy), Error);
    MeshPolicy bad;
    bad.growth = 1.5;
    CHECK_THROWS_AS(build_mesh(P, 0.0, spec, bad), Error);
}

TEST_CASE("shot matches the constant-coefficient closed form on [0, a]") {
    // V2 is flat on [0, a]: the even solution is cos(kx) (oscillatory) or
    // cosh(qx), and the mesh lands on x = a exactly.
    SUBCASE("oscillatory") {
        const double a = 1e-3, E = 0.5;
        const PotentialSpec spec = make_potential(Family::V2, a, P);
        const double k = std::sqrt((E + P.alpha / a) * (E + P.alpha / a) - P.m * P.m);
        MeshPolicy policy;
        policy.h0 = a / 1000.0;
        std::vector<TraceSample> trace;
        shoot(P, spec, E, Parity::even, policy, &trace);
        bool found = false;
        for (const TraceSample& s : trace) {
            if (s.x == a) {
                found = true;
                CHECK(s.psi == doctest::Approx(std::cos(k * a)).epsilon(1e-8));
            }
        }
        CHECK(found);
    }
    SUBCASE("exponential") {
        const double a = 0.3, E = 0.8;
        const PotentialSpec spec = make_potential(Family::V2, a, P);
        const double q = std::sqrt(P.m * P.m - (E + P.alpha / a) * (E + P.alpha / a));
        MeshPolicy policy;
        policy.h0 = a / 1000.0;
        std::vector<TraceSample> trace;
        shoot(P, spec, E, Parity::even, policy, &trace);
        for (const TraceSample& s : trace)
            if (s.x == a) CHECK(s.psi == doctest::Approx(std::cosh(q * a)).epsilon(1e-8));
    }
    SUBCASE("odd starts with unit slope") {
        const double a = 1e-3, E = 0.5;
        const PotentialSpec spec = make_potential(Family::V2, a, P);
        const double k = std::sqrt((E + P.alpha / a) * (E + P.alpha / a) - P.m * P.m);
        MeshPolicy policy;
        policy.h0 = a / 1000.0;
        std::vector<TraceSample> trace;
        shoot(P, spec, E, Parity::odd, policy, &trace);
        for (const TraceSample& s : trace)
            if (s.x == a)
                CHECK(s.psi == doctest::Approx(std::sin(k * a) / k).epsilon(1e-8));
    }
}

TEST_CASE("near-free shot grows like cosh and halts at the blow-up threshold") {
    const PotentialSpec spec = make_potential(Family::V1, 1e9, P);
    const double E = 0.99 * P.m;
    const double kappa = std::sqrt((P.m - E) * (P.m + E));
    const ShotResult shot = shoot(P, spec, E, Parity::even, MeshPolicy{});
    CHECK(shot.nodes == 0);
    CHECK(shot.terminal_sign == +1);
    CHECK(shot.halted_early);  // cosh passes 1e8 long before 30/kappa
    const double expected = std::log(std::cosh(kappa * shot.x_end));
    CHECK(shot.terminal_log_magnitude == doctest::Approx(expected).epsilon(1e-3));
}

TEST_CASE("fourth-order convergence of the terminal magnitude") {
    const PotentialSpec spec = make_potential(Family::V1, 1e9, P);
    const double E = 0.5, kappa = std::sqrt(1.0 - E * E);
    double errs[4];
    int i = 0;
    for (double h0 : {0.5, 0.25, 0.125, 0.0625}) {
        MeshPolicy policy;
        policy.h0 = h0;
        policy.growth = 1.0;
        policy.blowup_threshold = 1e300;
        const ShotResult r = shoot(P, spec, E, Parity::even, policy);
        errs[i++] = std::fabs(r.terminal_log_magnitude - std::log(std::cosh(kappa * r.x_end)));
    }
    for (int j = 0; j + 1 < 4; ++j) {
        const double ratio = errs[j] / errs[j + 1];
        CHECK(ratio > 8.0);
        CHECK(ratio < 32.0);
    }
}

TEST_CASE("node count is stable under step halving") {
    const PotentialSpec spec = make_potential(Family::V1, 1e-4, P);
    for (double E : {0.2, 0.9, 0.99999, -0.4}) {
        MeshPolicy coarse;
        const ShotResult base = shoot(P, spec, E * P.m, Parity::even, coarse);
        MeshPolicy fine;
        fine.h0 = resolve_h0(coarse, P, E * P.m, spec) / 2.0;
        const ShotResult halved = shoot(P, spec, E * P.m, Parity::even, fine);
        CHECK(base.nodes == halved.nodes);
    }
}

TEST_CASE("shot at the oracle ground state decays instead of diverging") {
    const PotentialSpec spec = make_potential(Family::V1, 0.05, P);
    const RichardsonEstimate est = oracle_lowest_richardson(P, spec, Parity::even, 1000, 150.0);

    MeshPolicy policy;
    policy.x_max_factor = 15.0;
    policy.blowup_threshold = 1e300;
    const ShotResult at_eigen = shoot(P, spec, est.E, Parity::even, policy);
    CHECK(at_eigen.nodes == 0);

    // the eigen-shot's tail sits far below neighbours detuned by several times
    // the oracle's own uncertainty
    const double detune = 5.0 * est.error_estimate;
    const ShotResult above = shoot(P, spec, est.E + detune, Parity::even, policy);
    const ShotResult below = shoot(P, spec, est.E - detune, Parity::even, policy);
    CHECK(at_eigen.terminal_log_magnitude < above.terminal_log_magnitude - 1.0);
    CHECK(at_eigen.terminal_log_magnitude < below.terminal_log_magnitude - 1.0);
}

TEST_CASE("tail of a converged shot decays as the domain grows") {
    // Domain lengths stay below the finite-precision turn-around point
    // (kappa x ~ -ln(tol)/2) by trimming through the cap.
    const PotentialSpec spec = make_potential(Family::V1, 1e-4, P);
    SearchWindow window{P.m * (1.0 - P.alpha * P.alpha), P.m, 1e-12, 200};
    const double E = solve_energy(P, spec, Parity::odd, 0, window, MeshPolicy{}).E;
    const double kappa = std::sqrt((P.m - E) * (P.m + E));
    double prev = 1e300;
    for (double kx : {4.0, 6.0, 8.0}) {
        MeshPolicy policy;
        policy.x_max_cap = kx / kappa;
        const ShotResult r = shoot(P, spec, E, Parity::odd, policy);
        CHECK(r.terminal_log_magnitude < prev);
        prev = r.terminal_log_magnitude;
    }
}

TEST_CASE("integration is linear in the initial state") {
    const PotentialSpec spec = make_potential(Family::V2, 1e-3, P);
    const double E = 0.5;
    const Mesh mesh = build_mesh(P, E, spec, MeshPolicy{});
    const ShotResult unit = integrate_over_mesh(P, spec, E, 0.0, 1.0, mesh, 1e300);
    const ShotResult scaled = integrate_over_mesh(P, spec, E, 0.0, 3.7, mesh, 1e300);
    CHECK(scaled.nodes == unit.nodes);
    CHECK(scaled.terminal_sign == unit.terminal_sign);
    CHECK(scaled.terminal_log_magnitude ==
          doctest::Approx(unit.terminal_log_magnitude + std::log(3.7)).epsilon(1e-12));
}
