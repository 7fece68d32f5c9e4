#include <numeric>
#include <set>

#include "doctest.h"
#include "sweep1d/errors.hpp"
#include "sweep1d/kernels.hpp"
#include "sweep1d/partition.hpp"

using namespace sweep1d;

namespace {
LaunchConfig base_config(std::size_t n, std::size_t w, int ranks, int wf) {
    LaunchConfig cfg;
    cfg.equation = Equation::Heat;
    cfg.grid_size = n;
    cfg.block_width = w;
    cfg.ranks = ranks;
    cfg.work_factor = wf;
    return cfg;
}
} // namespace

TEST_CASE("partition splits blocks across ranks") {
    auto p = make_partition(base_config(320, 32, 2, 0));
    CHECK(p.blocks == std::vector<std::size_t>{5, 5});

    p = make_partition(base_config(384, 32, 3, 4));
    CHECK(p.blocks == std::vector<std::size_t>{8, 2, 2});
    CHECK(p.start_index == std::vector<std::size_t>{0, 256, 320});

    CHECK_THROWS_AS(make_partition(base_config(100, 32, 2, 0)), InvalidConfig);
}

TEST_CASE("invalid configurations name the violated constraint") {
    CHECK_THROWS_WITH_AS(make_partition(base_config(96, 6, 2, 0)),
                         doctest::Contains("multiple of 2*h"), InvalidConfig);
    CHECK_THROWS_WITH_AS(make_partition(base_config(100, 32, 2, 0)), doctest::Contains("divisible"),
                         InvalidConfig);
    CHECK_THROWS_WITH_AS(make_partition(base_config(320, 32, 1, 0)), doctest::Contains("rank"),
                         InvalidConfig);
    CHECK_THROWS_WITH_AS(make_partition(base_config(320, 32, 3, 2)), doctest::Contains("shares"),
                         InvalidConfig);
}

TEST_CASE("ring closure and coverage over the stated config ranges") {
    // exhaustive over w in {4,8,16}, R in {2,3,4}, WF in 0..8, n <= 2^12
    for (std::size_t w : {4u, 8u, 16u}) {
        for (int r : {2, 3, 4}) {
            for (int wf = 0; wf <= 8; ++wf) {
                for (std::size_t n = w; n <= 4096; n += w) {
                    auto cfg = base_config(n, w, r, wf);
                    const std::size_t blocks = n / w;
                    if (blocks % static_cast<std::size_t>(cfg.shares()) != 0) continue;
                    const auto p = make_partition(cfg);

                    std::size_t covered = 0;
                    std::size_t expect_start = 0;
                    for (int i = 0; i < r; ++i) {
                        CHECK(p.start_index[static_cast<std::size_t>(i)] == expect_start);
                        expect_start += p.owned_points(i);
                        covered += p.owned_points(i);
                    }
                    CHECK(covered == n);

                    if (wf > 0) {
                        CHECK(p.blocks[0] == static_cast<std::size_t>(wf) * p.blocks[1]);
                    }

                    int at = 0;
                    for (int hops = 0; hops < r; ++hops) at = p.left[static_cast<std::size_t>(at)];
                    CHECK(at == 0);
                }
            }
        }
    }
}

TEST_CASE("working array extents") {
    const auto heat = make_spec(Equation::Heat, Method::Lengthening);
    // one ghost depth per side plus the w/2 + h exchange region
    auto e = working_array_extents(4, 8, heat);
    CHECK(e.length == 38);
    CHECK(e.initialized == 34);
    e = working_array_extents(1, 4, heat);
    CHECK(e.length == 8);
    CHECK(e.initialized == 6);
    e = working_array_extents(2, 32, heat);
    CHECK(e.length == 82);
    CHECK(e.initialized == 66);

    // length - initialized = w/2 for every even w at h = 1
    for (std::size_t w : {4u, 8u, 12u, 16u, 32u, 64u}) {
        e = working_array_extents(3, w, heat);
        CHECK(e.length - e.initialized == w / 2);
    }

    const auto flat = make_spec(Equation::Euler, Method::Flattening);
    e = working_array_extents(2, 8, flat);
    CHECK(e.ghost == 2);
    CHECK(e.length == 16 + 4 + 4);
    CHECK(e.initialized == 16 + 4);

    CHECK_THROWS_AS(working_array_extents(2, 7, heat), InvalidConfig);
}

TEST_CASE("swept buffer carries w/2 + h cells") {
    const auto heat = make_spec(Equation::Heat, Method::Lengthening);
    CHECK(swept_buffer_cells(8, heat) == 5);
    CHECK(swept_buffer_cells(32, heat) == 17);
    const auto flat = make_spec(Equation::Euler, Method::Flattening);
    CHECK(swept_buffer_cells(8, flat) == 6);
}

TEST_CASE("initial conditions") {
    const auto heat = make_spec(Equation::Heat, Method::Lengthening);
    const auto sine = initial_condition("heat-sine", 4, heat);
    CHECK(sine[0] == 0.0);
    CHECK(sine[1] == 1.0);
    CHECK(sine[2] == 0.0);
    CHECK(sine[3] == -1.0);

    const auto uni = initial_condition("uniform", 6, heat);
    for (double v : uni) CHECK(v == 1.0);

    const auto euler = make_spec(Equation::Euler, Method::Lengthening);
    const auto sod = initial_condition("euler-sod-periodic", 4, euler, 1.4);
    REQUIRE(sod.size() == 12);
    CHECK(sod[0] == 1.0);
    CHECK(sod[1] == 0.0);
    CHECK(sod[2] == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(sod[6] == 0.125);
    CHECK(sod[7] == 0.0);
    CHECK(sod[8] == doctest::Approx(0.25).epsilon(1e-15));

    CHECK_THROWS_AS(initial_condition("no-such-ic", 8, heat), UnknownInitialCondition);
    CHECK_THROWS_AS(initial_condition("heat-sine", 8, euler), UnknownInitialCondition);
}

TEST_CASE("signal speed at the Sod state sets dt/dx") {
    const auto euler = make_spec(Equation::Euler, Method::Lengthening);
    const auto sod = initial_condition("euler-sod-periodic", 8, euler, 1.4);
    CHECK(max_signal_speed(sod, 1.4) == doctest::Approx(std::sqrt(1.4)).epsilon(1e-14));

    LaunchConfig cfg;
    cfg.equation = Equation::Euler;
    cfg.grid_size = 64;
    cfg.block_width = 8;
    cfg.ranks = 2;
    cfg.finalize();
    CHECK(cfg.phys.dt_dx == doctest::Approx(0.4 / std::sqrt(1.4)).epsilon(1e-14));
}
