#include <cmath>
#include <cstring>
#include <vector>

#include "doctest.h"
#include "kg1d.h"

namespace {

struct ModelHandle {
    kg1d_model* m = nullptr;
    ModelHandle(double alpha = 1.0 / 137.0, double mass = 1.0) {
        REQUIRE(kg1d_model_create(alpha, mass, &m) == KG1D_OK);
    }
    ~ModelHandle() { kg1d_model_destroy(m); }
};

} // namespace

TEST_CASE("model lifecycle and constant getters") {
    ModelHandle h;
    CHECK(kg1d_model_alpha(h.m) == 1.0 / 137.0);
    CHECK(kg1d_model_mass(h.m) == 1.0);
    CHECK(std::fabs(kg1d_model_delta(h.m) / 5.32821e-5 - 1.0) < 2e-6);

    kg1d_model* bad = nullptr;
    CHECK(kg1d_model_create(0.9, 1.0, &bad) == KG1D_EINVAL);
    CHECK(bad == nullptr);
    CHECK(std::strlen(kg1d_last_message()) > 0);
    CHECK(kg1d_model_create(1.0 / 137.0, -1.0, &bad) == KG1D_EINVAL);
    CHECK(kg1d_model_create(1.0 / 137.0, 1.0, nullptr) == KG1D_EINVAL);
}

TEST_CASE("status names and version") {
    CHECK(std::strcmp(kg1d_status_name(KG1D_OK), "ok") == 0);
    CHECK(std::strcmp(kg1d_status_name(KG1D_EBRACKET), "bracket failure") == 0);
    CHECK(std::strlen(kg1d_version()) > 0);
}

TEST_CASE("scaled-coordinate maps through the C surface") {
    ModelHandle h;
    double s = 0, a = 0, beta = 0, E = 0;
    CHECK(kg1d_s_from_a(h.m, 5.28217e-5, &s) == KG1D_OK);
    CHECK(std::fabs(s - 0.99136) < 1e-5);
    CHECK(kg1d_a_from_s(h.m, s, &a) == KG1D_OK);
    CHECK(a == doctest::Approx(5.28217e-5).epsilon(1e-12));

    CHECK(kg1d_beta_from_energy(h.m, 0.5, &beta) == KG1D_OK);
    CHECK(kg1d_energy_from_beta(h.m, beta, &E) == KG1D_OK);
    CHECK(E == doctest::Approx(0.5).epsilon(1e-12));

    CHECK(kg1d_beta_from_energy(h.m, 1.0, &beta) == KG1D_EDOMAIN);
    CHECK(kg1d_s_from_a(h.m, -1.0, &s) == KG1D_EDOMAIN);
}

TEST_CASE("potential evaluation and model configuration") {
    ModelHandle h;
    double v = 0;
    CHECK(kg1d_potential_value(h.m, KG1D_V1, 1e-3, 0.0, &v) == KG1D_OK);
    CHECK(v == doctest::Approx(-(1.0 / 137.0) / 1e-3).epsilon(1e-12));
    CHECK(kg1d_potential_depth(h.m, KG1D_V2, 1e-3, &v) == KG1D_OK);
    CHECK(v == doctest::Approx(-7.2993).epsilon(1e-4));
    CHECK(kg1d_potential_value(h.m, KG1D_V1, 1e-3, -1.0, &v) == KG1D_EDOMAIN);

    CHECK(kg1d_model_set_mesh(h.m, 0, 1.5, 0, 0, 0) == KG1D_EINVAL);
    CHECK(kg1d_model_set_mesh(h.m, 0, 1.005, 40, 0, 0) == KG1D_OK);
    double h0, growth, xf, xc, blow;
    kg1d_model_get_mesh(h.m, &h0, &growth, &xf, &xc, &blow);
    CHECK(growth == 1.005);
    CHECK(xf == 40.0);
    CHECK(xc == 1e6);
}

TEST_CASE("solvers through the C surface") {
    ModelHandle h;
    double a2 = 0;
    REQUIRE(kg1d_a_from_s(h.m, 2.0, &a2) == KG1D_OK);

    kg1d_point pt;
    REQUIRE(kg1d_solve_energy(h.m, KG1D_V1, a2, KG1D_EVEN, 0, 0.0, 1.0, &pt) == KG1D_OK);
    CHECK(pt.beta > 0.0);
    CHECK(pt.nodes == 0);
    CHECK(pt.s == doctest::Approx(2.0).epsilon(1e-9));

    kg1d_point back;
    REQUIRE(kg1d_solve_cutoff(h.m, KG1D_V1, pt.E, KG1D_EVEN, 0, 0, 0, &back) == KG1D_OK);
    CHECK(back.a == doctest::Approx(a2).epsilon(1e-8));

    // no nodeless state below the fold
    double a_low = 0;
    kg1d_a_from_s(h.m, 0.9, &a_low);
    CHECK(kg1d_solve_energy(h.m, KG1D_V1, a_low, KG1D_EVEN, 0, 1e-9, 1.0, &pt) ==
          KG1D_EBRACKET);
}

TEST_CASE("shot and trajectory buffers") {
    ModelHandle h;
    kg1d_shot shot;
    REQUIRE(kg1d_shoot(h.m, KG1D_V1, 1e9, 0.99, KG1D_EVEN, &shot) == KG1D_OK);
    CHECK(shot.nodes == 0);
    CHECK(shot.terminal_sign == 1);
    CHECK(shot.halted_early == 1);

    size_t need = 0;
    CHECK(kg1d_shot_trace(h.m, KG1D_V2, 1e-3, 0.5, KG1D_EVEN, nullptr, nullptr, nullptr, 0,
                          &need) == KG1D_EBUFFER);
    REQUIRE(need > 10);
    std::vector<double> xs(need), psis(need), dpsis(need);
    REQUIRE(kg1d_shot_trace(h.m, KG1D_V2, 1e-3, 0.5, KG1D_EVEN, xs.data(), psis.data(),
                            dpsis.data(), need, &need) == KG1D_OK);
    CHECK(xs.front() == 0.0);
    CHECK(psis.front() == 1.0);
    CHECK(dpsis.front() == 0.0);
}

TEST_CASE("tracing through the C surface") {
    ModelHandle h;
    std::vector<double> energies(15);
    REQUIRE(kg1d_default_beta_grid(h.m, 50.0, energies.size(), energies.data()) == KG1D_OK);
    std::vector<kg1d_point> pts(energies.size());
    REQUIRE(kg1d_trace_energy(h.m, KG1D_V1, energies.data(), energies.size(), pts.data()) ==
            KG1D_OK);
    int upper = 0, lower = 0;
    for (const auto& pt : pts) {
        if (pt.branch == KG1D_BRANCH_UPPER) ++upper;
        if (pt.branch == KG1D_BRANCH_LOWER) ++lower;
        const double delta = kg1d_model_delta(h.m);
        CHECK(pt.s == doctest::Approx(pt.a / delta).epsilon(1e-10));
    }
    CHECK(upper + lower == static_cast<int>(pts.size()));

    double cutoffs[2];
    kg1d_a_from_s(h.m, 0.98, &cutoffs[0]);
    kg1d_a_from_s(h.m, 3.0, &cutoffs[1]);
    kg1d_point out[2];
    kg1d_status st[2];
    REQUIRE(kg1d_trace_cutoff(h.m, KG1D_V1, cutoffs, 2, KG1D_BRANCH_LOWER, out, st) ==
            KG1D_OK);
    CHECK(st[0] == KG1D_EBRACKET);  // below the fold
    CHECK(st[1] == KG1D_OK);
    CHECK(out[1].E < 0.0);
}

TEST_CASE("special points through the C surface") {
    ModelHandle h;
    kg1d_special sp;
    REQUIRE(kg1d_special_points(h.m, KG1D_V1, &sp) == KG1D_OK);
    CHECK(std::fabs(sp.s0 - 0.99906868) < 1e-4);
    CHECK(std::fabs(sp.s_min - 0.99136) < 5e-4);
    CHECK(std::fabs(sp.s_inf - 6.1711) < 5e-3);
    CHECK(sp.methods_agree == 1);
    CHECK(sp.s_min < sp.s0);
    CHECK(sp.s0 < sp.s_inf);
}

TEST_CASE("balmer and oracle through the C surface") {
    ModelHandle h;
    double eps = 0, E = 0;
    CHECK(kg1d_balmer_epsilon(h.m, 1e-5, 1, KG1D_ODD, &eps) == KG1D_OK);
    CHECK(eps == doctest::Approx(1.4599e-7).epsilon(1e-4));
    CHECK(kg1d_balmer_energy(h.m, 1e-5, 1, KG1D_ODD, &E) == KG1D_OK);
    CHECK(E < 1.0);

    kg1d_doublet d;
    REQUIRE(kg1d_balmer_doublet(h.m, KG1D_V1, 1e-4, 1, &d) == KG1D_OK);
    CHECK(std::fabs((1.0 - d.E_numeric_odd) - (1.0 - d.E_formula_odd)) /
              (1.0 - d.E_formula_odd) < 0.01);

    double evs[32];
    int nodes[32];
    size_t found = 0;
    REQUIRE(kg1d_oracle_spectrum(h.m, KG1D_V1, 0.2, KG1D_EVEN, 800, 200.0, evs, nodes, 32,
                                 &found) == KG1D_OK);
    REQUIRE(found >= 1);
    CHECK(nodes[0] == 0);

    size_t needed = 0;
    CHECK(kg1d_oracle_spectrum(h.m, KG1D_V1, 0.2, KG1D_EVEN, 800, 200.0, nullptr, nullptr,
                               0, &needed) == KG1D_EBUFFER);
    CHECK(needed == found);

    double E_ext = 0, est = 0;
    REQUIRE(kg1d_oracle_lowest(h.m, KG1D_V1, 0.2, KG1D_EVEN, 500, 200.0, &E_ext, &est) ==
            KG1D_OK);
    CHECK(est > 0.0);
    CHECK(std::fabs(E_ext - evs[0]) < 1e-4);
}
