#include "sweep1d/swept.hpp"

#include <string>

#include "sweep1d/detail/engines_impl.hpp"
#include "sweep1d/errors.hpp"

namespace sweep1d {

namespace {
void check_width(std::size_t w, std::size_t h) {
    if (h < 1) {
        throw InvalidWidth("stencil half-width must be >= 1");
    }
    if (w < 4 || (w & 1) || w < 4 * h || w % (2 * h) != 0) {
        throw InvalidWidth("block width " + std::to_string(w) +
                           " must be even, >= 4*h and a multiple of 2*h for half-width " +
                           std::to_string(h));
    }
}
} // namespace

std::size_t cycle_advance(std::size_t w, std::size_t h) {
    check_width(w, h);
    return w / (2 * h);
}

PhaseSchedule triangle_schedule(std::size_t w, std::size_t h) {
    check_width(w, h);
    const std::size_t m = w / (2 * h);
    PhaseSchedule out;
    for (std::size_t k = 1; k < m; ++k) {
        out.levels.push_back(SpanAtLevel{static_cast<long>(k),
                                         static_cast<std::ptrdiff_t>(k * h),
                                         static_cast<std::ptrdiff_t>(w - k * h)});
    }
    return out;
}

PhaseSchedule diamond_schedule(std::size_t w, std::size_t h) {
    check_width(w, h);
    const std::size_t m = w / (2 * h);
    PhaseSchedule out;
    for (std::size_t r = 1; r <= 2 * m - 1; ++r) {
        const std::size_t half = h * std::min(r, 2 * m - r);
        out.levels.push_back(SpanAtLevel{static_cast<long>(r),
                                         -static_cast<std::ptrdiff_t>(half),
                                         static_cast<std::ptrdiff_t>(half)});
    }
    return out;
}

PhaseSchedule down_triangle_schedule(std::size_t w, std::size_t h) {
    check_width(w, h);
    const std::size_t m = w / (2 * h);
    PhaseSchedule out;
    for (std::size_t r = 1; r <= m; ++r) {
        const std::size_t half = h * r;
        out.levels.push_back(SpanAtLevel{static_cast<long>(r),
                                         -static_cast<std::ptrdiff_t>(half),
                                         static_cast<std::ptrdiff_t>(half)});
    }
    return out;
}

// Swept engine instantiations for the three models.
namespace detail {
template void swept_worker<HeatModel>(RankContext<HeatModel>&, const LaunchConfig&, RingTransport&);
template void swept_worker<EulerLenModel>(RankContext<EulerLenModel>&, const LaunchConfig&, RingTransport&);
template void swept_worker<EulerFlatModel>(RankContext<EulerFlatModel>&, const LaunchConfig&, RingTransport&);
} // namespace detail

} // namespace sweep1d
