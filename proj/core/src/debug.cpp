#include "sweep1d/debug.hpp"

#include <algorithm>
#include <stdexcept>

namespace sweep1d {

const char* phase_name(PhaseId id) {
    switch (id) {
        case PhaseId::Serial: return "serial";
        case PhaseId::ClassicStep: return "classic";
        case PhaseId::UpTriangle: return "up";
        case PhaseId::Diamond: return "diamond";
        case PhaseId::DownTriangle: return "down";
        case PhaseId::Pad: return "pad";
    }
    return "?";
}

void DebugSink::dump_events(std::ostream& os) const {
    std::vector<CoverageEvent> all;
    for (const auto& per_rank : events) {
        all.insert(all.end(), per_rank.begin(), per_rank.end());
    }
    std::sort(all.begin(), all.end(), [](const CoverageEvent& a, const CoverageEvent& b) {
        if (a.substep != b.substep) return a.substep < b.substep;
        return a.index < b.index;
    });
    for (const auto& e : all) {
        os << e.index << ' ' << e.substep << ' ' << e.rank << ' '
           << phase_name(static_cast<PhaseId>(e.phase)) << '\n';
    }
}

void ShadowArray::expect(int lane, std::ptrdiff_t i, long level, const char* what) const {
    const long got = lanes[static_cast<std::size_t>(lane)][static_cast<std::size_t>(i)];
    if (got != level) {
        throw std::logic_error(std::string("record discipline violation reading ") + what +
                               " at slot " + std::to_string(i) + ": expected level " +
                               std::to_string(level) + ", slot holds " +
                               (got == kShadowUnwritten ? std::string("uninitialized")
                                                        : std::to_string(got)));
    }
}

std::vector<long> ShadowArray::pack(std::size_t lo, std::size_t len) const {
    std::vector<long> out;
    out.reserve(lanes.size() * len);
    for (const auto& lane : lanes) {
        out.insert(out.end(), lane.begin() + static_cast<std::ptrdiff_t>(lo),
                   lane.begin() + static_cast<std::ptrdiff_t>(lo + len));
    }
    return out;
}

void ShadowArray::unpack(const std::vector<long>& data, std::size_t lo, std::size_t len) {
    for (std::size_t k = 0; k < lanes.size(); ++k) {
        std::copy(data.begin() + static_cast<std::ptrdiff_t>(k * len),
                  data.begin() + static_cast<std::ptrdiff_t>((k + 1) * len),
                  lanes[k].begin() + static_cast<std::ptrdiff_t>(lo));
    }
}

void ShadowArray::copy_range(std::size_t dst, std::size_t src, std::size_t len) {
    for (auto& lane : lanes) {
        std::copy(lane.begin() + static_cast<std::ptrdiff_t>(src),
                  lane.begin() + static_cast<std::ptrdiff_t>(src + len),
                  lane.begin() + static_cast<std::ptrdiff_t>(dst));
    }
}

// Lane layout: heat T0/T1; lengthening Q0/Q1/Pr; flattening Q0/Q1.

template <>
void shadow_apply<HeatModel>(ShadowArray& sh, std::ptrdiff_t i, long c) {
    const int read_lane = static_cast<int>((c - 1) & 1);
    for (std::ptrdiff_t j = i - 1; j <= i + 1; ++j) {
        sh.expect(read_lane, j, c - 1, "temperature window");
    }
    sh.note_write(static_cast<int>(c & 1), i, c);
}

template <>
void shadow_apply<EulerLenModel>(ShadowArray& sh, std::ptrdiff_t i, long c) {
    constexpr int q0 = 0, q1 = 1, pr = 2;
    const long phase = c & 3;
    if (phase == 1) {
        for (std::ptrdiff_t j = i - 1; j <= i + 1; ++j) sh.expect(q0, j, c - 1, "Q0 for ratio");
        sh.note_write(pr, i, c);
    } else if (phase == 2) {
        for (std::ptrdiff_t j = i - 1; j <= i + 1; ++j) {
            sh.expect(q0, j, c - 2, "Q0 for predictor");
            sh.expect(pr, j, c - 1, "Pr for predictor");
        }
        sh.note_write(q1, i, c);
    } else if (phase == 3) {
        for (std::ptrdiff_t j = i - 1; j <= i + 1; ++j) sh.expect(q1, j, c - 1, "Q1 for ratio");
        sh.note_write(pr, i, c);
    } else {
        for (std::ptrdiff_t j = i - 1; j <= i + 1; ++j) {
            sh.expect(q1, j, c - 2, "Q1 for corrector");
            sh.expect(pr, j, c - 1, "Pr for corrector");
        }
        sh.expect(q0, i, c - 4, "own Q0 for corrector");
        sh.note_write(q0, i, c);
    }
}

template <>
void shadow_apply<EulerFlatModel>(ShadowArray& sh, std::ptrdiff_t i, long c) {
    constexpr int q0 = 0, q1 = 1;
    if (c & 1) {
        for (std::ptrdiff_t j = i - 2; j <= i + 2; ++j) sh.expect(q0, j, c - 1, "Q0 for predictor");
        sh.note_write(q1, i, c);
    } else {
        for (std::ptrdiff_t j = i - 2; j <= i + 2; ++j) sh.expect(q1, j, c - 1, "Q1 for corrector");
        sh.expect(q0, i, c - 2, "own Q0 for corrector");
        sh.note_write(q0, i, c);
    }
}

} // namespace sweep1d
