#include <cmath>

#include "doctest.h"
#include "kg1d/balmer.hpp"
#include "kg1d/errors.hpp"
#include "kg1d/solve.hpp"
#include "kg1d/trace.hpp"

using namespace kg1d;

namespace {
const ModelParams P = make_model(default_alpha, 1.0);

ShotResult fake_shot(int nodes, double log_mag, int sign, bool halted) {
    ShotResult s;
    s.nodes = nodes;
    s.terminal_log_magnitude = log_mag;
    s.terminal_sign = sign;
    s.halted_early = halted;
    s.x_end = 30.0;
    return s;
}
} // namespace

TEST_CASE("node-count rules per regime") {
    // too many nodes: E too high for E > 0, E too low for E < 0, a too low
    const ShotResult many = fake_shot(3, 20.0, -1, true);
    CHECK(classify_shot(many, 0, Regime::energy_positive) == ShotClass::too_high);
    CHECK(classify_shot(many, 0, Regime::energy_negative) == ShotClass::too_low);
    const ShotResult one = fake_shot(1, 20.0, -1, true);
    CHECK(classify_shot(one, 0, Regime::cutoff) == ShotClass::too_low);
}

TEST_CASE("terminal-sign refinement at the target count") {
    // initially positive solution, target 0: last lobe sign +1
    const ShotResult grown_same = fake_shot(0, 19.0, +1, false);
    CHECK(classify_shot(grown_same, 0, Regime::energy_positive) == ShotClass::too_low);
    CHECK(classify_shot(grown_same, 0, Regime::energy_negative) == ShotClass::too_high);
    CHECK(classify_shot(grown_same, 0, Regime::cutoff) == ShotClass::too_high);

    const ShotResult grown_flip = fake_shot(0, 19.0, -1, false);
    CHECK(classify_shot(grown_flip, 0, Regime::energy_positive) == ShotClass::too_high);
    CHECK(classify_shot(grown_flip, 0, Regime::cutoff) == ShotClass::too_low);

    // odd target: lobe sign (-1)^1
    const ShotResult one_node = fake_shot(1, 19.0, -1, false);
    CHECK(classify_shot(one_node, 1, Regime::energy_positive) == ShotClass::too_low);

    const ShotResult decayed = fake_shot(0, -25.0, +1, false);
    CHECK(classify_shot(decayed, 0, Regime::energy_positive) == ShotClass::candidate);

    const ShotResult undecided = fake_shot(0, 0.5, +1, false);
    CHECK_THROWS_AS(classify_shot(undecided, 0, Regime::energy_positive),
                    AmbiguousShotError);
}

TEST_CASE("energy solve hits the first odd doublet level") {
    const PotentialSpec spec = make_potential(Family::V1, 1e-5, P);
    SearchWindow window{P.m * (1.0 - P.alpha * P.alpha), P.m, 1e-12, 200};
    const SpectralPoint pt = solve_energy(P, spec, Parity::odd, 0, window, MeshPolicy{});
    const double predicted = balmer_energy(P, spec.a, 1, Parity::odd);
    CHECK(std::fabs((P.m - pt.E) - (P.m - predicted)) / (P.m - predicted) < 0.01);
    CHECK(pt.nodes == 0);
    CHECK(pt.parity == Parity::odd);
}

TEST_CASE("cutoff solve reproduces the published s0 values") {
    const SpectralPoint v1 = solve_cutoff(P, Family::V1, 0.0, Parity::even, 0,
                                          SearchWindow{}, MeshPolicy{});
    CHECK(std::fabs(v1.s - 0.99906868) < 1e-4);
    CHECK(v1.beta == 0.0);
    CHECK(v1.E == 0.0);

    const SpectralPoint v2 = solve_cutoff(P, Family::V2, 0.0, Parity::even, 0,
                                          SearchWindow{}, MeshPolicy{});
    CHECK(std::fabs(v2.s - 1.9982289) < 2e-4);
}

TEST_CASE("cutoff solve at negative energy lands between the fold and the threshold") {
    const SpectralPoint pt = solve_cutoff(P, Family::V1, -0.5 * P.m, Parity::even, 0,
                                          SearchWindow{}, MeshPolicy{});
    CHECK(pt.s > 0.99136);
    CHECK(pt.s < 6.1711);
    CHECK(pt.beta < 0.0);
}

TEST_CASE("energy search at the published s0 cutoff: the level sits at E ~ 0") {
    // With a = a(s0_published) the nodeless level lies within ~1e-5 m of zero,
    // which is below the positive window's lower edge, so the solver reports a
    // clean bracket failure rather than inventing a root.  The substance of
    // the example (E ~ 0 at this cutoff) is asserted through the E = 0 search.
    const double a0 = a_from_s(0.99906868, P);
    const PotentialSpec spec = make_potential(Family::V1, a0, P);
    SearchWindow window{1e-6, P.m, 1e-12, 200};
    try {
        const SpectralPoint pt = solve_energy(P, spec, Parity::even, 0, window, MeshPolicy{});
        CHECK(std::fabs(pt.E) < 3e-6);
    } catch (const BracketError&) {
        const SpectralPoint at_zero = solve_cutoff(P, Family::V1, 0.0, Parity::even, 0,
                                                   SearchWindow{}, MeshPolicy{});
        CHECK(std::fabs(at_zero.a - a0) / a0 < 1e-4);
    }
}

TEST_CASE("the two search modes agree") {
    const double a = a_from_s(2.0, P);
    const PotentialSpec spec = make_potential(Family::V1, a, P);
    SearchWindow window{0.0, P.m, 1e-12, 200};
    const SpectralPoint by_energy = solve_energy(P, spec, Parity::even, 0, window,
                                                 MeshPolicy{});
    const SpectralPoint by_cutoff = solve_cutoff(P, Family::V1, by_energy.E, Parity::even,
                                                 0, SearchWindow{}, MeshPolicy{});
    CHECK(by_cutoff.a == doctest::Approx(a).epsilon(1e-8));
}

TEST_CASE("scaling law: E/m depends on (alpha, m a) only") {
    MeshPolicy policy;
    for (double sigma : {2.5, 0.4}) {
        const ModelParams scaled = make_model(default_alpha, sigma);
        const double a = a_from_s(3.0, scaled);
        SearchWindow w1{1e-9 * sigma, sigma, 1e-12, 200};
        const double E1 = solve_energy(scaled, make_potential(Family::V1, a, scaled),
                                       Parity::even, 0, w1, policy).E;
        SearchWindow w2{1e-9, 1.0, 1e-12, 200};
        const double E2 = solve_energy(P, make_potential(Family::V1, sigma * a, P),
                                       Parity::even, 0, w2, policy).E;
        CHECK(std::fabs(E1 / sigma - E2) <= 10.0 * 1e-12);
    }
}

TEST_CASE("tightening the tolerance moves the root by less than the old tolerance") {
    const double a = a_from_s(2.0, P);
    const PotentialSpec spec = make_potential(Family::V1, a, P);
    SearchWindow coarse{0.0, P.m, 1e-9, 200};
    SearchWindow fine{0.0, P.m, 1e-10, 200};
    const double E_coarse = solve_energy(P, spec, Parity::even, 0, coarse, MeshPolicy{}).E;
    const double E_fine = solve_energy(P, spec, Parity::even, 0, fine, MeshPolicy{}).E;
    CHECK(std::fabs(E_coarse - E_fine) < 1e-9 * P.m);
}

TEST_CASE("solver error paths") {
    const PotentialSpec spec = make_potential(Family::V1, a_from_s(2.0, P), P);
    SearchWindow straddling{-0.5, 0.5, 1e-12, 200};
    CHECK_THROWS_AS(solve_energy(P, spec, Parity::even, 0, straddling, MeshPolicy{}),
                    Error);

    // at s = 2 the nodeless level sits at E ~ 0.80 m: below it both endpoints
    // classify low
    SearchWindow empty_region{0.02 * P.m, 0.5 * P.m, 1e-12, 200};
    CHECK_THROWS_AS(solve_energy(P, spec, Parity::even, 0, empty_region, MeshPolicy{}),
                    BracketError);

    SearchWindow capped{0.0, P.m, 1e-12, 3};
    CHECK_THROWS_AS(solve_energy(P, spec, Parity::even, 0, capped, MeshPolicy{}),
                    IterationLimitError);

    CHECK_THROWS_AS(solve_cutoff(P, Family::V1, 1.5 * P.m, Parity::even, 0,
                                 SearchWindow{}, MeshPolicy{}),
                    Error);
    CHECK_THROWS_AS(solve_energy(P, spec, Parity::even, -1, SearchWindow{0.0, P.m},
                                 MeshPolicy{}),
                    Error);
}
