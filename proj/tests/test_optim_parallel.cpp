#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "kg1d/errors.hpp"
#include "kg1d/optim.hpp"
#include "kg1d/parallel.hpp"

using namespace kg1d;

TEST_CASE("golden section finds a quadratic minimum") {
    auto f = [](double x) { return 3.0 * (x - 0.7) * (x - 0.7) - 2.0; };
    const GoldenResult r = golden_section_minimize(f, -1.0, 2.0, 1e-9);
    CHECK(r.x == doctest::Approx(0.7).epsilon(1e-6));
    CHECK(r.f == doctest::Approx(-2.0).epsilon(1e-10));
    CHECK(r.x_lo < r.x);
    CHECK(r.x < r.x_hi);
    CHECK(r.evals > 4);
}

TEST_CASE("golden section handles an off-center narrow dip") {
    auto f = [](double x) { return -std::exp(-((x - 0.05) * (x - 0.05)) / 1e-4); };
    const GoldenResult r = golden_section_minimize(f, -1.0, 1.0, 1e-10);
    CHECK(r.x == doctest::Approx(0.05).epsilon(1e-5));
}

TEST_CASE("parabolic vertex") {
    CHECK(parabola_vertex(0.0, 4.0, 1.0, 1.0, 3.0, 1.0) == doctest::Approx(2.0));
    // collinear points: keep the middle
    CHECK(parabola_vertex(0.0, 0.0, 1.0, 1.0, 2.0, 2.0) == 1.0);
}

TEST_CASE("golden section rejects bad windows") {
    auto f = [](double x) { return x * x; };
    CHECK_THROWS_AS(golden_section_minimize(f, 1.0, -1.0, 1e-6), Error);
    CHECK_THROWS_AS(golden_section_minimize(f, -1.0, 1.0, 0.0), Error);
}

TEST_CASE("parallel_for covers every index exactly once") {
    for (int threads : {1, 4}) {
        std::vector<std::atomic<int>> hits(257);
        parallel_for(hits.size(), threads, [&](std::size_t i) { hits[i]++; });
        for (const auto& h : hits) CHECK(h.load() == 1);
    }
}

TEST_CASE("parallel_for rethrows the lowest-index failure") {
    try {
        parallel_for(64, 4, [&](std::size_t i) {
            if (i == 13 || i == 40) throw Error(Errc::domain, "boom " + std::to_string(i));
        });
        FAIL("expected an exception");
    } catch (const Error& e) {
        CHECK(std::string(e.what()) == "boom 13");
    }
}

TEST_CASE("thread count resolution") {
    CHECK(resolve_thread_count(3) == 3);
    setenv("KG1D_THREADS", "2", 1);
    CHECK(resolve_thread_count(0) == 2);
    setenv("KG1D_THREADS", "garbage", 1);
    CHECK(resolve_thread_count(0) >= 1);
    unsetenv("KG1D_THREADS");
    CHECK(resolve_thread_count(0) >= 1);
}
