#pragma once

#include <cstddef>
#include <vector>

#include "types.hpp"

namespace sweep1d {

/// One substep level of a phase: the half-open index span active at that
/// 1-based substep offset. Triangle spans are relative to the block start;
/// diamond spans are relative to the center seam (and so may be negative).
struct SpanAtLevel {
    long substep = 0;
    std::ptrdiff_t lo = 0;
    std::ptrdiff_t hi = 0;

    std::size_t width() const { return static_cast<std::size_t>(hi - lo); }
    bool operator==(const SpanAtLevel&) const = default;
};

struct PhaseSchedule {
    std::vector<SpanAtLevel> levels;
    long substeps() const { return levels.empty() ? 0 : levels.back().substep; }
};

/// Levels per cycle: every point advances w/(2h) substeps between exchanges.
std::size_t cycle_advance(std::size_t w, std::size_t h);

/// Up-triangle: substep k computes block offsets [k*h, w - k*h); the last
/// level leaves 2h values at the block center. Throws InvalidWidth unless
/// w is even, w >= 4h and 2h divides w.
PhaseSchedule triangle_schedule(std::size_t w, std::size_t h);

/// Diamond: widths 2h*min(r, 2m-r) centered on the seam for r = 1..2m-1,
/// expanding through the seam-spanning level w then contracting.
PhaseSchedule diamond_schedule(std::size_t w, std::size_t h);

/// Down-triangle: the expanding half of the diamond, ending with the full
/// width w so every point reaches the same substep.
PhaseSchedule down_triangle_schedule(std::size_t w, std::size_t h);

} // namespace sweep1d
