#include <vector>

#include "doctest.h"
#include "sweep1d/errors.hpp"
#include "sweep1d/swept.hpp"

using namespace sweep1d;

namespace {
std::vector<std::size_t> widths(const PhaseSchedule& s) {
    std::vector<std::size_t> out;
    for (const auto& lvl : s.levels) out.push_back(lvl.width());
    return out;
}
} // namespace

TEST_CASE("up-triangle shrinks by h per side per substep") {
    CHECK(widths(triangle_schedule(8, 1)) == std::vector<std::size_t>{6, 4, 2});
    CHECK(widths(triangle_schedule(8, 2)) == std::vector<std::size_t>{4});
    CHECK(widths(triangle_schedule(4, 1)) == std::vector<std::size_t>{2});

    const auto t = triangle_schedule(8, 1);
    CHECK(t.levels[0].lo == 1);
    CHECK(t.levels[0].hi == 7);
    CHECK(t.levels[2].lo == 3); // last level leaves the 2h center values
    CHECK(t.levels[2].hi == 5);

    CHECK_THROWS_AS(triangle_schedule(7, 1), InvalidWidth);
    CHECK_THROWS_AS(triangle_schedule(4, 2), InvalidWidth);
    CHECK_THROWS_AS(triangle_schedule(10, 2), InvalidWidth);
}

TEST_CASE("diamond expands through the seam-spanning width then contracts") {
    CHECK(widths(diamond_schedule(8, 1)) == std::vector<std::size_t>{2, 4, 6, 8, 6, 4, 2});
    CHECK(widths(diamond_schedule(8, 2)) == std::vector<std::size_t>{4, 8, 4});
    // minimal case w = 4h: every point advances 2 substeps per cycle
    CHECK(cycle_advance(4, 1) == 2);
    CHECK(widths(diamond_schedule(4, 1))  == std::vector<std::size_t>{2, 4, 2});

    // symmetric about the seam
    for (const auto& lvl : diamond_schedule(8, 1).levels) CHECK(lvl.lo == -lvl.hi);
}

TEST_CASE("down-triangle is the expanding half, ending at full width") {
    CHECK(widths(down_triangle_schedule(8, 1)) == std::vector<std::size_t>{2, 4, 6, 8});
    CHECK(widths(down_triangle_schedule(8, 2)) == std::vector<std::size_t>{4, 8});
    CHECK(down_triangle_schedule(8, 1).substeps() == 4);
}

TEST_CASE("per-cycle advance is w/(2h)") {
    CHECK(cycle_advance(8, 1) == 4);
    CHECK(cycle_advance(32, 1) == 16);
    CHECK(cycle_advance(8, 2) == 2);
    CHECK(cycle_advance(32, 2) == 8);
    // a full diamond has 2*advance - 1 levels
    for (std::size_t w : {4u, 8u, 16u, 32u}) {
        const auto m = cycle_advance(w, 1);
        CHECK(diamond_schedule(w, 1).levels.size() == 2 * m - 1);
    }
}
