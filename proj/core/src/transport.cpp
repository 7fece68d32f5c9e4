#include "sweep1d/transport.hpp"

#include <algorithm>
#include <cstring>

#include "sweep1d/errors.hpp"

namespace sweep1d {

RingTransport::RingTransport(int ranks, Mode mode, TransportParams params, bool keep_log)
    : nranks_(ranks), mode_(mode), params_(params), keep_log_(keep_log),
      posts_(static_cast<std::size_t>(ranks)), staged_left_(static_cast<std::size_t>(ranks)),
      staged_right_(static_cast<std::size_t>(ranks)), clocks_(static_cast<std::size_t>(ranks), 0.0),
      rank_stats_(static_cast<std::size_t>(ranks)) {
    if (ranks < 2) {
        throw InvalidConfig("transport requires at least 2 ranks");
    }
}

void RingTransport::throw_aborted_locked() {
    throw TransportAborted(abort_reason_.empty() ? "transport aborted" : abort_reason_);
}

void RingTransport::wait_to_post(std::unique_lock<std::mutex>& lk) {
    cv_.wait(lk, [&] { return aborted_ || !collecting_; });
    if (aborted_) throw_aborted_locked();
}

void RingTransport::wait_for_collect(std::unique_lock<std::mutex>& lk, std::uint64_t my_round) {
    cv_.wait(lk, [&] { return aborted_ || round_ > my_round; });
    if (aborted_) throw_aborted_locked();
}

void RingTransport::finish_collect_locked() {
    if (--pending_collect_ == 0) {
        collecting_ = false;
        for (auto& p : posts_) p = Post{};
        cv_.notify_all();
    }
}

void RingTransport::fail_round_locked(const char* what) {
    aborted_ = true;
    abort_reason_ = what;
    cv_.notify_all();
}

void RingTransport::complete_round_locked() {
    const Post& first = posts_[0];
    for (const auto& p : posts_) {
        if (p.kind != first.kind || (p.kind == Kind::Shift && p.dir != first.dir)) {
            fail_round_locked("ranks joined rounds of different kinds");
            throw TagMismatch("ranks joined rounds of different kinds");
        }
        if (p.tag != first.tag) {
            fail_round_locked("tag mismatch within an exchange round");
            throw TagMismatch("tag mismatch within an exchange round: " + std::to_string(p.tag) +
                              " vs " + std::to_string(first.tag));
        }
        if (p.left_size != first.left_size || p.right_size != first.right_size) {
            fail_round_locked("payload size mismatch within an exchange round");
            throw PayloadSizeMismatch("payload sizes differ across ranks in one round");
        }
    }

    for (int r = 0; r < nranks_; ++r) {
        const auto& p = posts_[static_cast<std::size_t>(r)];
        auto& sl = staged_left_[static_cast<std::size_t>(r)];
        auto& sr = staged_right_[static_cast<std::size_t>(r)];
        sl.assign(p.left, p.left + p.left_size);
        sr.assign(p.right, p.right + p.right_size);
    }

    const std::uint64_t per_message = std::max(first.left_size, first.right_size);
    const double round_cost = params_.alpha + params_.beta * static_cast<double>(per_message);
    const int msgs = first.kind == Kind::Exchange ? 2 : 1;

    for (int r = 0; r < nranks_; ++r) {
        auto& st = rank_stats_[static_cast<std::size_t>(r)];
        st.messages_sent += static_cast<std::uint64_t>(msgs);
        st.bytes_sent += posts_[static_cast<std::size_t>(r)].left_size +
                         posts_[static_cast<std::size_t>(r)].right_size;
        st.exchange_rounds += 1;
        st.virtual_comm_time += round_cost;
    }
    if (mode_ == Mode::VirtualTime) {
        const double peak = *std::max_element(clocks_.begin(), clocks_.end());
        std::fill(clocks_.begin(), clocks_.end(), peak + round_cost);
    }
    if (keep_log_) {
        for (int r = 0; r < nranks_; ++r) {
            const auto& p = posts_[static_cast<std::size_t>(r)];
            const int to_left = (r + nranks_ - 1) % nranks_;
            const int to_right = (r + 1) % nranks_;
            if (p.kind == Kind::Exchange) {
                log_.push_back({round_, r, to_left, p.tag, p.left_size});
                log_.push_back({round_, r, to_right, p.tag, p.right_size});
            } else if (p.dir == Direction::Left) {
                log_.push_back({round_, r, to_left, p.tag, p.left_size});
            } else {
                log_.push_back({round_, r, to_right, p.tag, p.right_size});
            }
        }
    }
    round_ += 1;
    collecting_ = true;
    pending_collect_ = nranks_;
    arrived_ = 0;
    cv_.notify_all();
}

void RingTransport::exchange(int rank, std::span<const std::byte> left_payload,
                             std::span<const std::byte> right_payload, std::uint64_t tag,
                             std::span<std::byte> from_left, std::span<std::byte> from_right) {
    std::unique_lock lk(mu_);
    wait_to_post(lk);

    auto& mine = posts_[static_cast<std::size_t>(rank)];
    mine = Post{Kind::Exchange, left_payload.data(), left_payload.size(),
                right_payload.data(), right_payload.size(), Direction::Left, tag};
    const std::uint64_t my_round = round_;
    if (++arrived_ == nranks_) {
        complete_round_locked();
    } else {
        wait_for_collect(lk, my_round);
    }

    // Ring semantics: the left neighbor's rightward payload arrives from the left.
    const auto& from_l = staged_right_[static_cast<std::size_t>((rank + nranks_ - 1) % nranks_)];
    const auto& from_r = staged_left_[static_cast<std::size_t>((rank + 1) % nranks_)];
    if (from_l.size() != from_left.size() || from_r.size() != from_right.size()) {
        fail_round_locked("receive buffer does not match incoming payload");
        throw PayloadSizeMismatch("receive buffer does not match incoming payload");
    }
    if (!from_l.empty()) std::memcpy(from_left.data(), from_l.data(), from_l.size());
    if (!from_r.empty()) std::memcpy(from_right.data(), from_r.data(), from_r.size());
    finish_collect_locked();
}

void RingTransport::shift(int rank, Direction dir, std::span<const std::byte> payload,
                          std::uint64_t tag, std::span<std::byte> received) {
    std::unique_lock lk(mu_);
    wait_to_post(lk);

    auto& mine = posts_[static_cast<std::size_t>(rank)];
    mine = Post{Kind::Shift, nullptr, 0, nullptr, 0, dir, tag};
    if (dir == Direction::Left) {
        mine.left = payload.data();
        mine.left_size = payload.size();
    } else {
        mine.right = payload.data();
        mine.right_size = payload.size();
    }
    const std::uint64_t my_round = round_;
    if (++arrived_ == nranks_) {
        complete_round_locked();
    } else {
        wait_for_collect(lk, my_round);
    }

    // A leftward round delivers the right neighbor's payload, and vice versa.
    const int src = dir == Direction::Left ? (rank + 1) % nranks_ : (rank + nranks_ - 1) % nranks_;
    const auto& data = dir == Direction::Left ? staged_left_[static_cast<std::size_t>(src)]
                                              : staged_right_[static_cast<std::size_t>(src)];
    if (data.size() != received.size()) {
        fail_round_locked("receive buffer does not match incoming payload");
        throw PayloadSizeMismatch("receive buffer does not match incoming payload");
    }
    if (!data.empty()) std::memcpy(received.data(), data.data(), data.size());
    finish_collect_locked();
}

void RingTransport::advance_clock(int rank, std::uint64_t compute_units) {
    if (mode_ != Mode::VirtualTime) {
        throw ModeMismatch("virtual clock advanced in wall-clock mode");
    }
    clocks_[static_cast<std::size_t>(rank)] += static_cast<double>(compute_units) * params_.compute_cost;
}

double RingTransport::max_clock() const {
    return *std::max_element(clocks_.begin(), clocks_.end());
}

void RingTransport::abort() noexcept {
    std::lock_guard lk(mu_);
    aborted_ = true;
    if (abort_reason_.empty()) abort_reason_ = "aborted by engine";
    cv_.notify_all();
}

CommStats RingTransport::stats() const {
    std::lock_guard lk(mu_);
    CommStats out;
    out.exchange_rounds = round_;
    out.per_rank = rank_stats_;
    for (const auto& st : rank_stats_) {
        out.messages_sent += st.messages_sent;
        out.bytes_sent += st.bytes_sent;
        out.virtual_comm_time = std::max(out.virtual_comm_time, st.virtual_comm_time);
    }
    return out;
}

std::vector<MessageLogEntry> RingTransport::sorted_log() const {
    std::lock_guard lk(mu_);
    auto log = log_;
    std::stable_sort(log.begin(), log.end(), [](const MessageLogEntry& a, const MessageLogEntry& b) {
        if (a.round != b.round) return a.round < b.round;
        if (a.source != b.source) return a.source < b.source;
        return a.dest < b.dest;
    });
    return log;
}

void RingTransport::export_log(const std::vector<MessageLogEntry>& log, std::ostream& os) {
    for (const auto& e : log) {
        os << e.round << ' ' << e.source << ' ' << e.dest << ' ' << e.tag << ' ' << e.bytes << '\n';
    }
}

} // namespace sweep1d
