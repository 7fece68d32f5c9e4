#pragma once

// Templated engine bodies shared by the serial, classic and swept translation
// units. Everything here works on one model (cell type + kernel policy); the
// public dispatch lives in engine.cpp.

#include <chrono>
#include <cstring>
#include <thread>

#include "sweep1d/engine.hpp"
#include "sweep1d/errors.hpp"
#include "sweep1d/kernels.hpp"
#include "sweep1d/partition.hpp"
#include "sweep1d/swept.hpp"
#include "sweep1d/transport.hpp"

namespace sweep1d::detail {

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class Cell>
std::span<const std::byte> cell_bytes(const Cell* p, std::size_t count) {
    return {reinterpret_cast<const std::byte*>(p), count * sizeof(Cell)};
}
template <class Cell>
std::span<std::byte> cell_bytes_mut(Cell* p, std::size_t count) {
    return {reinterpret_cast<std::byte*>(p), count * sizeof(Cell)};
}

/// Run `body(rank)` on one thread per rank; a failure anywhere aborts the
/// transport so parked ranks unwind. Rethrows the first real error.
template <class Fn>
void run_ranks(int ranks, RingTransport& transport, Fn&& body) {
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(ranks));
    threads.reserve(static_cast<std::size_t>(ranks));
    for (int r = 0; r < ranks; ++r) {
        threads.emplace_back([&, r] {
            try {
                body(r);
            } catch (...) {
                errors[static_cast<std::size_t>(r)] = std::current_exception();
                transport.abort();
            }
        });
    }
    for (auto& t : threads) t.join();

    std::exception_ptr first_any, first_real;
    for (const auto& e : errors) {
        if (!e) continue;
        if (!first_any) first_any = e;
        if (!first_real) {
            try {
                std::rethrow_exception(e);
            } catch (const TransportAborted&) {
            } catch (...) {
                first_real = e;
            }
        }
    }
    if (first_real) std::rethrow_exception(first_real);
    if (first_any) std::rethrow_exception(first_any);
}

// Exchange tags: (round-scoped counter << 3) | phase code. Every rank of a
// round must agree on the tag, which pins scheduling bugs at the transport.
enum : std::uint64_t {
    kTagClassic = 1,
    kTagSweptLeft = 2,
    kTagSweptRight = 3,
    kTagPad = 5,
};
inline std::uint64_t make_tag(long counter, std::uint64_t phase) {
    return (static_cast<std::uint64_t>(counter) << 3) | phase;
}

// ---------------------------------------------------------------------------
// Serial reference
// ---------------------------------------------------------------------------

template <class Model>
std::vector<double> serial_advance(const LaunchConfig& cfg, const RunOptions& opts, DebugSink* sink) {
    using Cell = typename Model::Cell;
    constexpr std::size_t h = Model::half_width;
    constexpr int vpp = Model::values_per_point;
    const EquationSpec spec = cfg.spec();
    const std::size_t n = cfg.grid_size;
    const long total = cfg.steps * Model::substeps;

    if (sink) sink->init(1, n, total, opts);
    const auto ic = initial_condition(cfg.initial_or_default(), n, spec, cfg.phys.gamma);
    std::vector<Cell> cells(n + 2 * h);
    for (std::size_t i = 0; i < n; ++i) cells[h + i] = Model::make_cell(&ic[i * vpp]);

    const bool war = sink && sink->war_check;
    ShadowArray shadow;
    if (war) shadow.init(Model::shadow_lanes, cells.size(), cells.size());

    bool perturb_pending = opts.perturb_ulp;
    for (long c = 1; c <= total; ++c) {
        // periodic halos refreshed from the current records
        std::copy(cells.begin() + static_cast<std::ptrdiff_t>(n), cells.begin() + static_cast<std::ptrdiff_t>(n + h),
                  cells.begin());
        std::copy(cells.begin() + static_cast<std::ptrdiff_t>(h), cells.begin() + static_cast<std::ptrdiff_t>(2 * h),
                  cells.begin() + static_cast<std::ptrdiff_t>(h + n));
        if (war) {
            shadow.copy_range(0, n, h);
            shadow.copy_range(h + n, h, h);
        }
        for (std::size_t i = h; i < h + n; ++i) {
            if (war) shadow_apply<Model>(shadow, static_cast<std::ptrdiff_t>(i), c);
            Model::apply(cells.data(), static_cast<std::ptrdiff_t>(i), c, cfg.phys);
            if (perturb_pending) {
                Model::perturb_one_ulp(cells[i], c);
                perturb_pending = false;
            }
            if (sink) sink->note(0, PhaseId::Serial, i - h, c, classify_substep(spec, c));
        }
    }

    std::vector<double> out(n * static_cast<std::size_t>(vpp));
    for (std::size_t i = 0; i < n; ++i) Model::extract(cells[h + i], total, &out[i * vpp]);
    return out;
}

// ---------------------------------------------------------------------------
// Shared per-rank context
// ---------------------------------------------------------------------------

template <class Model>
struct RankContext {
    using Cell = typename Model::Cell;
    int rank = 0;
    std::size_t owned = 0;        // N = blocks * w
    std::size_t global_start = 0; // g0
    std::size_t n = 0;
    std::vector<Cell> cells;
    ShadowArray shadow;
    bool war = false;
    bool perturb_pending = false;
    DebugSink* sink = nullptr;     // set only when per-point notes are wanted
    DebugSink* war_sink = nullptr; // set when war checking is on (shadow mailboxes)
    std::uint64_t compute_units = 0; // point-substeps since the last clock advance
    std::uint64_t rounds_done = 0;   // local exchange parity for shadow boxes

    std::size_t to_global(std::size_t slot, std::size_t ghost) const {
        return (global_start + n + slot - ghost) % n;
    }
};

template <class Model>
void apply_span(RankContext<Model>& ctx, const LaunchConfig& cfg, std::size_t lo, std::size_t hi,
                long counter, PhaseId phase, std::size_t ghost) {
    const EquationSpec spec = cfg.spec();
    for (std::size_t i = lo; i < hi; ++i) {
        if (ctx.war) shadow_apply<Model>(ctx.shadow, static_cast<std::ptrdiff_t>(i), counter);
        Model::apply(ctx.cells.data(), static_cast<std::ptrdiff_t>(i), counter, cfg.phys);
        if (ctx.perturb_pending) {
            Model::perturb_one_ulp(ctx.cells[i], counter);
            ctx.perturb_pending = false;
        }
        if (ctx.sink) ctx.sink->note(ctx.rank, phase, ctx.to_global(i, ghost), counter,
                                     classify_substep(spec, counter));
    }
    ctx.compute_units += hi - lo;
}

/// Classic-style bidirectional halo exchange around the slice starting at
/// slot `base`: h edge cells out each way, neighbors' edges into the halos.
template <class Model>
void halo_exchange(RankContext<Model>& ctx, RingTransport& tr, std::size_t base, std::size_t h,
                   std::uint64_t tag) {
    auto& cells = ctx.cells;
    const std::size_t N = ctx.owned;
    const int r = ctx.rank;
    const int nr = tr.ranks();
    const std::size_t parity = ctx.rounds_done & 1;
    if (ctx.war) {
        ctx.war_sink->shadow_left_box[static_cast<std::size_t>(r)][parity] = ctx.shadow.pack(base, h);
        ctx.war_sink->shadow_right_box[static_cast<std::size_t>(r)][parity] = ctx.shadow.pack(base + N - h, h);
    }
    tr.exchange(r, cell_bytes(cells.data() + base, h), cell_bytes(cells.data() + base + N - h, h), tag,
                cell_bytes_mut(cells.data() + (base - h), h), cell_bytes_mut(cells.data() + base + N, h));
    if (ctx.war) {
        const int left = (r + nr - 1) % nr;
        const int right = (r + 1) % nr;
        ctx.shadow.unpack(ctx.war_sink->shadow_right_box[static_cast<std::size_t>(left)][parity], base - h, h);
        ctx.shadow.unpack(ctx.war_sink->shadow_left_box[static_cast<std::size_t>(right)][parity], base + N, h);
    }
    ctx.rounds_done += 1;
}

// ---------------------------------------------------------------------------
// Classic decomposition: h-deep halos exchanged after every substep.
// ---------------------------------------------------------------------------

template <class Model>
void classic_worker(RankContext<Model>& ctx, const LaunchConfig& cfg, RingTransport& tr) {
    constexpr std::size_t h = Model::half_width;
    const long total = cfg.steps * Model::substeps;
    for (long c = 1; c <= total; ++c) {
        apply_span(ctx, cfg, h, h + ctx.owned, c, PhaseId::ClassicStep, h);
        if (cfg.mode == Mode::VirtualTime) {
            tr.advance_clock(ctx.rank, ctx.compute_units);
            ctx.compute_units = 0;
        }
        halo_exchange(ctx, tr, h, h, make_tag(c, kTagClassic));
    }
}

// ---------------------------------------------------------------------------
// Swept decomposition
// ---------------------------------------------------------------------------

/// Where each phase's centers sit in slot coordinates. Odd phases follow a
/// leftward pass and work on seams; even phases follow a rightward pass and
/// work on block centers.
template <class Model>
std::vector<std::size_t> phase_centers(const RankContext<Model>& ctx, std::size_t w, std::size_t ghost,
                                       bool seam_centered) {
    const std::size_t n_blocks = ctx.owned / w;
    std::vector<std::size_t> centers;
    centers.reserve(n_blocks);
    for (std::size_t b = 0; b < n_blocks; ++b) {
        centers.push_back(seam_centered ? ghost + (b + 1) * w : ghost + b * w + w / 2);
    }
    return centers;
}

template <class Model>
void swept_worker(RankContext<Model>& ctx, const LaunchConfig& cfg, RingTransport& tr) {
    constexpr std::size_t h = Model::half_width;
    const std::size_t w = cfg.block_width;
    const std::size_t m = cycle_advance(w, h);
    const std::size_t N = ctx.owned;
    const std::size_t buf = swept_buffer_cells(w, cfg.spec());
    const long total = cfg.steps * Model::substeps;
    const long cycles = total / static_cast<long>(m);
    auto& cells = ctx.cells;

    const PhaseSchedule up = triangle_schedule(w, h);
    const PhaseSchedule diamond = diamond_schedule(w, h);
    const PhaseSchedule down = down_triangle_schedule(w, h);

    auto advance_clock = [&] {
        if (cfg.mode == Mode::VirtualTime) {
            tr.advance_clock(ctx.rank, ctx.compute_units);
            ctx.compute_units = 0;
        }
    };

    // One message per rank per cycle, alternating direction. The leftward
    // pass sends the first w/2+h owned cells and fills the array tail; the
    // rightward pass returns the boundary diamond's output and refreshes the
    // ghosts at position 0.
    auto pass = [&](bool leftward, std::uint64_t tag) {
        const std::size_t send_lo = leftward ? h : N;
        const std::size_t recv_lo = leftward ? h + N : 0;
        const std::size_t parity = ctx.rounds_done & 1;
        if (ctx.war) {
            auto& box = leftward ? ctx.war_sink->shadow_left_box : ctx.war_sink->shadow_right_box;
            box[static_cast<std::size_t>(ctx.rank)][parity] = ctx.shadow.pack(send_lo, buf);
        }
        tr.shift(ctx.rank, leftward ? Direction::Left : Direction::Right,
                 cell_bytes(cells.data() + send_lo, buf), tag,
                 cell_bytes_mut(cells.data() + recv_lo, buf));
        if (ctx.war) {
            auto& box = leftward ? ctx.war_sink->shadow_left_box : ctx.war_sink->shadow_right_box;
            const int nr = tr.ranks();
            const int src = leftward ? (ctx.rank + 1) % nr : (ctx.rank + nr - 1) % nr;
            ctx.shadow.unpack(box[static_cast<std::size_t>(src)][parity], recv_lo, buf);
        }
        ctx.rounds_done += 1;
    };

    if (cycles >= 1) {
        // Up triangle over each owned block.
        const std::size_t n_blocks = N / w;
        for (const SpanAtLevel& lvl : up.levels) {
            for (std::size_t b = 0; b < n_blocks; ++b) {
                const std::size_t base_slot = h + b * w;
                apply_span(ctx, cfg, base_slot + static_cast<std::size_t>(lvl.lo),
                           base_slot + static_cast<std::size_t>(lvl.hi), lvl.substep,
                           PhaseId::UpTriangle, h);
            }
        }
        advance_clock();

        for (long j = 1; j <= cycles; ++j) {
            const bool leftward = (j & 1) != 0;
            pass(leftward, make_tag(j, leftward ? kTagSweptLeft : kTagSweptRight));
            const long base = (j - 1) * static_cast<long>(m);
            const bool last = j == cycles;
            const PhaseSchedule& sched = last ? down : diamond;
            const PhaseId phase = last ? PhaseId::DownTriangle : PhaseId::Diamond;
            const auto centers = phase_centers(ctx, w, h, leftward);
            for (const SpanAtLevel& lvl : sched.levels) {
                for (std::size_t center : centers) {
                    const auto pos = static_cast<std::ptrdiff_t>(center);
                    apply_span(ctx, cfg, static_cast<std::size_t>(pos + lvl.lo),
                               static_cast<std::size_t>(pos + lvl.hi), base + lvl.substep, phase, h);
                }
            }
            advance_clock();
        }
    }

    // Finish unaligned totals with classic halo substeps on the (possibly
    // shifted) slices; the gather undoes the shift.
    const std::size_t shift = (cycles & 1) ? w / 2 : 0;
    const std::size_t slice = h + shift;
    for (long c = cycles * static_cast<long>(m) + 1; c <= total; ++c) {
        halo_exchange(ctx, tr, slice, h, make_tag(c, kTagPad));
        apply_span(ctx, cfg, slice, slice + N, c, PhaseId::Pad, h);
        advance_clock();
    }
}

// ---------------------------------------------------------------------------
// Orchestration shared by both decompositions
// ---------------------------------------------------------------------------

template <class Model>
RunResult run_decomposed(const LaunchConfig& cfg, const RunOptions& opts, DebugSink* sink) {
    using Cell = typename Model::Cell;
    constexpr std::size_t h = Model::half_width;
    constexpr int vpp = Model::values_per_point;
    const auto t_setup = std::chrono::steady_clock::now();

    const EquationSpec spec = cfg.spec();
    const Partition part = make_partition(cfg);
    const std::size_t n = cfg.grid_size;
    const long total = cfg.steps * Model::substeps;
    const bool swept = cfg.scheme == Scheme::Swept;

    DebugSink local_sink; // always present so worker code can assume one
    DebugSink* sk = sink ? sink : &local_sink;
    sk->init(cfg.ranks, n, total, opts);

    const auto ic = initial_condition(cfg.initial_or_default(), n, spec, cfg.phys.gamma);
    auto cell_at = [&](std::size_t g) { return Model::make_cell(&ic[(g % n) * vpp]); };

    std::vector<RankContext<Model>> ctx(static_cast<std::size_t>(cfg.ranks));
    for (int r = 0; r < cfg.ranks; ++r) {
        auto& c = ctx[static_cast<std::size_t>(r)];
        c.rank = r;
        c.owned = part.owned_points(r);
        c.global_start = part.start_index[static_cast<std::size_t>(r)];
        c.n = n;
        c.sink = (sk->coverage || sk->keep_events || sk->count_kinds) ? sk : nullptr;
        c.war = sk->war_check;
        c.war_sink = c.war ? sk : nullptr;
        c.perturb_pending = opts.perturb_ulp && r == 0;

        std::size_t length, init_prefix;
        if (swept) {
            const auto ext = working_array_extents(c.owned / cfg.block_width, cfg.block_width, spec);
            length = ext.length;
            init_prefix = ext.initialized;
        } else {
            length = c.owned + 2 * h;
            init_prefix = length;
        }
        c.cells.assign(length, Cell{});
        for (std::size_t i = 0; i < init_prefix; ++i) {
            c.cells[i] = cell_at(c.global_start + n + i - h);
        }
        if (c.war) c.shadow.init(Model::shadow_lanes, length, init_prefix);
    }

    RingTransport transport(cfg.ranks, cfg.mode, cfg.transport, opts.keep_message_log);
    const double setup_seconds = seconds_since(t_setup);

    const auto t_loop = std::chrono::steady_clock::now();
    run_ranks(cfg.ranks, transport, [&](int r) {
        if (swept) {
            swept_worker(ctx[static_cast<std::size_t>(r)], cfg, transport);
        } else {
            classic_worker(ctx[static_cast<std::size_t>(r)], cfg, transport);
        }
    });
    const double loop_seconds = seconds_since(t_loop);

    // Assemble the global state from each rank's final slice.
    const std::size_t m = cycle_advance(cfg.block_width, h);
    const long cycles = swept ? total / static_cast<long>(m) : 0;
    const std::size_t shift = (swept && (cycles & 1)) ? cfg.block_width / 2 : 0;
    std::vector<RankSlice> slices;
    slices.reserve(static_cast<std::size_t>(cfg.ranks));
    for (auto& c : ctx) {
        RankSlice s;
        s.counter = total;
        s.global_start = (c.global_start + shift) % n;
        s.values_per_point = vpp;
        s.values.resize(c.owned * static_cast<std::size_t>(vpp));
        for (std::size_t i = 0; i < c.owned; ++i) {
            Model::extract(c.cells[h + shift + i], total, &s.values[i * vpp]);
        }
        slices.push_back(std::move(s));
    }

    RunResult out;
    out.state = gather_global(slices, n);
    out.stats = transport.stats();
    out.stats.setup_seconds = setup_seconds;
    if (opts.keep_message_log) out.log = transport.sorted_log();
    out.timing.setup_seconds = setup_seconds;
    out.timing.loop_seconds = loop_seconds;
    out.timing.virtual_seconds = cfg.mode == Mode::VirtualTime ? transport.max_clock() : 0.0;
    return out;
}

} // namespace sweep1d::detail
