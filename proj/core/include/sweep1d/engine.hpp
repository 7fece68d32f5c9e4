#pragma once

#include <cstddef>
#include <vector>

#include "config.hpp"
#include "debug.hpp"
#include "transport.hpp"

namespace sweep1d {

struct EngineTiming {
    double setup_seconds = 0.0;   // allocation, initial condition, partitioning
    double loop_seconds = 0.0;    // wall time of the stepping loop
    double virtual_seconds = 0.0; // final virtual clock (virtual mode only)
};

struct RunResult {
    std::vector<double> state; // values_per_point doubles per global point
    CommStats stats;
    std::vector<MessageLogEntry> log;
    EngineTiming timing;
};

/// Run one configured engine (classic or swept per cfg.scheme) across
/// cfg.ranks in-process ranks. `sink`, when given, is initialized by the run
/// and collects the requested instrumentation.
RunResult run(const LaunchConfig& cfg, const RunOptions& opts = {}, DebugSink* sink = nullptr);

/// Single-sequence reference solver over the periodic grid; the oracle the
/// decomposed schemes are compared against.
std::vector<double> run_serial(const LaunchConfig& cfg, const RunOptions& opts = {},
                               DebugSink* sink = nullptr);

/// One rank's contribution to the assembled global state.
struct RankSlice {
    long counter = 0;          // substep counter the slice is at
    std::size_t global_start = 0;
    int values_per_point = 1;
    std::vector<double> values;
};

/// Concatenate rank slices in global index order (wrapping mod n). Throws
/// PhaseSkew if the slices sit at different substep counters.
std::vector<double> gather_global(const std::vector<RankSlice>& slices, std::size_t n);

} // namespace sweep1d
