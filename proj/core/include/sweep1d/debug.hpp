#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <limits>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "kernels.hpp"

namespace sweep1d {

/// Optional run instrumentation and testing hooks.
struct RunOptions {
    bool keep_message_log = false;
    bool coverage = false;        // count every (point, substep) computation
    bool coverage_events = false; // additionally keep (index, substep, rank, phase) events
    bool war_check = false;       // validate the alternating-slot read/write discipline
    bool count_kinds = false;     // tally kernel dispatch kinds
    bool perturb_ulp = false;     // nudge the first kernel write by 1 ulp (mutation hook)
};

/// Counts how many times each (global index, substep level) pair is computed.
/// The swept tiling is correct exactly when every count is one.
class CoverageCounter {
  public:
    CoverageCounter(std::size_t n, long total_levels)
        : n_(n), levels_(total_levels),
          counts_(n * static_cast<std::size_t>(total_levels > 0 ? total_levels : 0)) {
        for (auto& c : counts_) c.store(0, std::memory_order_relaxed);
    }

    void record(std::size_t global_index, long level) {
        counts_[(static_cast<std::size_t>(level - 1)) * n_ + global_index].fetch_add(
            1, std::memory_order_relaxed);
    }

    std::size_t points() const { return n_; }
    long levels() const { return levels_; }
    std::uint32_t count(std::size_t global_index, long level) const {
        return counts_[(static_cast<std::size_t>(level - 1)) * n_ + global_index].load();
    }

    /// Pairs not computed exactly once; empty means the tiling is exact.
    std::vector<std::pair<std::size_t, long>> defects() const {
        std::vector<std::pair<std::size_t, long>> out;
        for (long lvl = 1; lvl <= levels_; ++lvl) {
            for (std::size_t x = 0; x < n_; ++x) {
                if (count(x, lvl) != 1) out.emplace_back(x, lvl);
            }
        }
        return out;
    }

  private:
    std::size_t n_;
    long levels_;
    std::vector<std::atomic<std::uint32_t>> counts_;
};

struct CoverageEvent {
    std::size_t index;
    long substep;
    int rank;
    std::uint8_t phase; // PhaseId
};

enum class PhaseId : std::uint8_t { Serial = 0, ClassicStep = 1, UpTriangle = 2, Diamond = 3, DownTriangle = 4, Pad = 5 };

const char* phase_name(PhaseId id);

/// Sink shared by one engine run. Per-rank event buffers keep recording
/// lock-free; shadow mailboxes mirror exchanged cell ranges so the checker
/// can follow records across ranks (double-buffered by round parity).
struct DebugSink {
    std::unique_ptr<CoverageCounter> coverage;
    std::vector<std::vector<CoverageEvent>> events; // per rank, kept only if coverage_events
    bool keep_events = false;

    std::array<std::atomic<std::uint64_t>, 4> kind_counts{}; // by SubstepKind
    bool count_kinds = false;

    bool war_check = false;
    std::vector<std::array<std::vector<long>, 2>> shadow_left_box;  // [rank][round parity]
    std::vector<std::array<std::vector<long>, 2>> shadow_right_box;

    void init(int ranks, std::size_t n, long total_levels, const RunOptions& opts) {
        if (opts.coverage) coverage = std::make_unique<CoverageCounter>(n, total_levels);
        keep_events = opts.coverage_events;
        events.assign(static_cast<std::size_t>(ranks), {});
        count_kinds = opts.count_kinds;
        for (auto& k : kind_counts) k.store(0);
        war_check = opts.war_check;
        shadow_left_box.assign(static_cast<std::size_t>(ranks), {});
        shadow_right_box.assign(static_cast<std::size_t>(ranks), {});
    }

    void note(int rank, PhaseId phase, std::size_t global_index, long level, SubstepKind kind) {
        if (coverage) coverage->record(global_index, level);
        if (keep_events) events[static_cast<std::size_t>(rank)].push_back(
            CoverageEvent{global_index, level, rank, static_cast<std::uint8_t>(phase)});
        if (count_kinds) kind_counts[static_cast<std::size_t>(kind)].fetch_add(1, std::memory_order_relaxed);
    }

    /// Line-delimited (index, substep, rank, phase) dump, sorted.
    void dump_events(std::ostream& os) const;
};

/// Shadow level a slot holds before anything was written: the initial
/// condition counts as level 0, uninitialized tail cells as Unwritten.
inline constexpr long kShadowUnwritten = std::numeric_limits<long>::min();

/// Per-rank shadow of last-written substep levels, one lane per record slot.
/// Lane meaning is model-specific (heat: T0/T1; lengthening: Q0/Q1/Pr;
/// flattening: Q0/Q1).
struct ShadowArray {
    std::vector<std::vector<long>> lanes;

    void init(int lane_count, std::size_t length, std::size_t initialized_prefix) {
        lanes.assign(static_cast<std::size_t>(lane_count), std::vector<long>(length, kShadowUnwritten));
        for (auto& lane : lanes) {
            std::fill(lane.begin(), lane.begin() + static_cast<std::ptrdiff_t>(initialized_prefix), 0L);
        }
    }
    int lane_count() const { return static_cast<int>(lanes.size()); }

    void expect(int lane, std::ptrdiff_t i, long level, const char* what) const;
    void note_write(int lane, std::ptrdiff_t i, long level) {
        lanes[static_cast<std::size_t>(lane)][static_cast<std::size_t>(i)] = level;
    }

    /// Pack/unpack a contiguous slot range across all lanes (for mirroring
    /// exchanged cells).
    std::vector<long> pack(std::size_t lo, std::size_t len) const;
    void unpack(const std::vector<long>& data, std::size_t lo, std::size_t len);
    void copy_range(std::size_t dst, std::size_t src, std::size_t len);
};

/// Model-specific read expectations and write notes for one substep
/// application at 1-based counter c. Violations throw std::logic_error.
template <class Model>
void shadow_apply(ShadowArray& sh, std::ptrdiff_t i, long c);

} // namespace sweep1d
