#pragma once

#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <mutex>
#include <ostream>
#include <span>
#include <vector>

#include "types.hpp"

namespace sweep1d {

enum class Direction { Left, Right };

/// Per-rank communication counters. `virtual_comm_time` is the sum of
/// alpha + beta*bytes over the rounds this rank took part in; messages posted
/// within one round overlap, so a round contributes one such term.
struct RankCommStats {
    std::uint64_t messages_sent = 0;
    std::uint64_t bytes_sent = 0;
    std::uint64_t exchange_rounds = 0;
    double virtual_comm_time = 0.0; // seconds
};

struct CommStats {
    std::uint64_t messages_sent = 0;
    std::uint64_t bytes_sent = 0;
    std::uint64_t exchange_rounds = 0;
    double virtual_comm_time = 0.0; // seconds, critical path
    double setup_seconds = 0.0;     // reported separately, never in virtual time
    std::vector<RankCommStats> per_rank;
};

struct MessageLogEntry {
    std::uint64_t round = 0;
    int source = 0;
    int dest = 0;
    std::uint64_t tag = 0;
    std::uint64_t bytes = 0;
};

/// Bulk-synchronous message passing over a periodic ring of in-process ranks.
/// Every rank joins each round; receives are satisfied from the neighbors'
/// posts of the same round, so the exchange is deadlock-free by construction.
/// In virtual-time mode each rank carries a clock that advances with local
/// compute and synchronizes to the round maximum plus the message cost.
class RingTransport {
  public:
    RingTransport(int ranks, Mode mode, TransportParams params, bool keep_log = false);

    /// Classic-style round: send both edge payloads, receive both neighbors'.
    /// Blocks until every rank has joined the round with the same tag.
    void exchange(int rank, std::span<const std::byte> left_payload,
                  std::span<const std::byte> right_payload, std::uint64_t tag,
                  std::span<std::byte> from_left, std::span<std::byte> from_right);

    /// Swept-style round: one message per rank in a common direction.
    void shift(int rank, Direction dir, std::span<const std::byte> payload, std::uint64_t tag,
               std::span<std::byte> received);

    /// Advance this rank's virtual clock by compute_units * compute_cost.
    /// Throws ModeMismatch in wall-clock mode. Call only from the owning rank.
    void advance_clock(int rank, std::uint64_t compute_units);
    double clock(int rank) const { return clocks_[static_cast<std::size_t>(rank)]; }
    double max_clock() const;

    /// Unblock parked ranks after a failure elsewhere; they throw TransportAborted.
    void abort() noexcept;

    CommStats stats() const;
    std::vector<MessageLogEntry> sorted_log() const;
    static void export_log(const std::vector<MessageLogEntry>& log, std::ostream& os);

    int ranks() const { return nranks_; }
    Mode mode() const { return mode_; }

  private:
    enum class Kind { None, Exchange, Shift };
    struct Post {
        Kind kind = Kind::None;
        const std::byte* left = nullptr;
        std::size_t left_size = 0;
        const std::byte* right = nullptr;
        std::size_t right_size = 0;
        Direction dir = Direction::Left;
        std::uint64_t tag = 0;
    };

    // Callers hold mu_. Validates the round shape, applies accounting and the
    // clock rule, appends log entries, and opens the collect phase.
    void complete_round_locked();
    void fail_round_locked(const char* what);
    void wait_to_post(std::unique_lock<std::mutex>& lk);
    void wait_for_collect(std::unique_lock<std::mutex>& lk, std::uint64_t my_round);
    void finish_collect_locked();
    [[noreturn]] void throw_aborted_locked();

    int nranks_;
    Mode mode_;
    TransportParams params_;
    bool keep_log_;

    mutable std::mutex mu_;
    std::condition_variable cv_;
    std::vector<Post> posts_;
    // Payloads are staged when the round completes so a rank's receive copy
    // can never clobber bytes a neighbor has yet to collect.
    std::vector<std::vector<std::byte>> staged_left_;
    std::vector<std::vector<std::byte>> staged_right_;
    int arrived_ = 0;
    int pending_collect_ = 0;
    bool collecting_ = false;
    bool aborted_ = false;
    std::string abort_reason_;
    std::uint64_t round_ = 0;

    std::vector<double> clocks_;
    std::vector<RankCommStats> rank_stats_;
    std::vector<MessageLogEntry> log_;
};

} // namespace sweep1d
