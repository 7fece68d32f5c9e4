#include <cstring>
#include <sstream>
#include <thread>

#include "doctest.h"
#include "sweep1d/errors.hpp"
#include "sweep1d/transport.hpp"

using namespace sweep1d;

namespace {

std::span<const std::byte> bytes_of(const std::vector<double>& v) {
    return {reinterpret_cast<const std::byte*>(v.data()), v.size() * sizeof(double)};
}
std::span<std::byte> bytes_of_mut(std::vector<double>& v) {
    return {reinterpret_cast<std::byte*>(v.data()), v.size() * sizeof(double)};
}

/// Run `body(rank)` on one thread per rank, rethrowing the first failure.
template <class Fn>
void on_ranks(int ranks, Fn&& body) {
    std::vector<std::thread> ts;
    std::vector<std::exception_ptr> errs(static_cast<std::size_t>(ranks));
    for (int r = 0; r < ranks; ++r) {
        ts.emplace_back([&, r] {
            try {
                body(r);
            } catch (...) {
                errs[static_cast<std::size_t>(r)] = std::current_exception();
            }
        });
    }
    for (auto& t : ts) t.join();
    for (auto& e : errs) {
        if (e) std::rethrow_exception(e);
    }
}

} // namespace

TEST_CASE("two-ring exchange delivers both neighbor payloads") {
    TransportParams params;
    RingTransport tr(2, Mode::VirtualTime, params);
    on_ranks(2, [&](int r) {
        std::vector<double> left{r + 0.25}, right{r + 0.5};
        std::vector<double> from_left(1), from_right(1);
        tr.exchange(r, bytes_of(left), bytes_of(right), 7, bytes_of_mut(from_left),
                    bytes_of_mut(from_right));
        // on a two-ring both neighbors are the other rank
        const double other = r == 0 ? 1.0 : 0.0;
        CHECK(from_left[0] == other + 0.5);  // neighbor's rightward payload
        CHECK(from_right[0] == other + 0.25);
    });
    const auto st = tr.stats();
    CHECK(st.exchange_rounds == 1);
    CHECK(st.messages_sent == 4);
    CHECK(st.bytes_sent == 4 * sizeof(double));
}

TEST_CASE("byte accounting per rank grows by both payloads") {
    TransportParams params;
    RingTransport tr(3, Mode::VirtualTime, params);
    const std::size_t k = 5; // cells per side
    on_ranks(3, [&](int r) {
        std::vector<double> payload(k, r), in_l(k), in_r(k);
        for (int round = 0; round < 4; ++round) {
            tr.exchange(r, bytes_of(payload), bytes_of(payload), static_cast<std::uint64_t>(round),
                        bytes_of_mut(in_l), bytes_of_mut(in_r));
        }
    });
    const auto st = tr.stats();
    for (const auto& rank : st.per_rank) {
        CHECK(rank.bytes_sent == 4 * 2 * k * sizeof(double));
        CHECK(rank.messages_sent == 8);
    }
}

TEST_CASE("alpha-only virtual cost accumulates one latency per round") {
    TransportParams params;
    params.alpha = 1e-4;
    params.beta = 0.0;
    RingTransport tr(2, Mode::VirtualTime, params);
    on_ranks(2, [&](int r) {
        std::vector<double> p{1.0}, a(1), b(1);
        for (int round = 0; round < 10; ++round) {
            tr.exchange(r, bytes_of(p), bytes_of(p), static_cast<std::uint64_t>(round),
                        bytes_of_mut(a), bytes_of_mut(b));
        }
    });
    const auto st = tr.stats();
    CHECK(st.per_rank[0].virtual_comm_time == doctest::Approx(1e-3).epsilon(1e-12));
    CHECK(st.per_rank[1].virtual_comm_time == doctest::Approx(1e-3).epsilon(1e-12));
    CHECK(tr.clock(0) == doctest::Approx(1e-3).epsilon(1e-12));
}

TEST_CASE("clocks synchronize to the round maximum plus cost") {
    TransportParams params;
    params.alpha = 1.0;
    params.compute_cost = 1.0;
    RingTransport tr(2, Mode::VirtualTime, params);
    on_ranks(2, [&](int r) {
        tr.advance_clock(r, r == 0 ? 3 : 5);
        std::vector<double> p{0.0}, a(1), b(1);
        tr.exchange(r, bytes_of(p), bytes_of(p), 1, bytes_of_mut(a), bytes_of_mut(b));
    });
    CHECK(tr.clock(0) == 6.0);
    CHECK(tr.clock(1) == 6.0);
}

TEST_CASE("zero compute units leave the clock unchanged") {
    TransportParams params;
    RingTransport tr(2, Mode::VirtualTime, params);
    tr.advance_clock(0, 0);
    CHECK(tr.clock(0) == 0.0);
}

TEST_CASE("clock advance in wall mode is a mode mismatch") {
    TransportParams params;
    RingTransport tr(2, Mode::WallClock, params);
    CHECK_THROWS_AS(tr.advance_clock(0, 10), ModeMismatch);
}

TEST_CASE("shift rounds move one payload per rank around the ring") {
    TransportParams params;
    RingTransport tr(4, Mode::VirtualTime, params, /*keep_log=*/true);
    on_ranks(4, [&](int r) {
        std::vector<double> payload{static_cast<double>(r)}, in(1);
        tr.shift(r, Direction::Left, bytes_of(payload), 9, bytes_of_mut(in));
        CHECK(in[0] == static_cast<double>((r + 1) % 4)); // right neighbor's payload
        tr.shift(r, Direction::Right, bytes_of(payload), 10, bytes_of_mut(in));
        CHECK(in[0] == static_cast<double>((r + 3) % 4));
    });
    const auto st = tr.stats();
    CHECK(st.exchange_rounds == 2);
    CHECK(st.per_rank[0].messages_sent == 2);
    const auto log = tr.sorted_log();
    REQUIRE(log.size() == 8);
    CHECK(log[0].round == 0);
    CHECK(log[0].source == 0);
    CHECK(log[0].dest == 3);
    CHECK(log[0].tag == 9);
    CHECK(log[0].bytes == sizeof(double));
}

TEST_CASE("payload integrity: every byte arrives exactly once, unchanged") {
    TransportParams params;
    for (int ranks : {2, 3, 5}) {
        RingTransport tr(ranks, Mode::VirtualTime, params);
        std::vector<std::vector<double>> got_left(static_cast<std::size_t>(ranks));
        std::vector<std::vector<double>> got_right(static_cast<std::size_t>(ranks));
        on_ranks(ranks, [&](int r) {
            std::vector<double> left(8), right(8);
            for (int i = 0; i < 8; ++i) {
                left[static_cast<std::size_t>(i)] = 100.0 * r + i;
                right[static_cast<std::size_t>(i)] = 100.0 * r + 50 + i;
            }
            std::vector<double> in_l(8), in_r(8);
            tr.exchange(r, bytes_of(left), bytes_of(right), 3, bytes_of_mut(in_l), bytes_of_mut(in_r));
            got_left[static_cast<std::size_t>(r)] = in_l;
            got_right[static_cast<std::size_t>(r)] = in_r;
        });
        for (int r = 0; r < ranks; ++r) {
            const int left_n = (r + ranks - 1) % ranks;
            const int right_n = (r + 1) % ranks;
            for (int i = 0; i < 8; ++i) {
                CHECK(got_left[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)] ==
                      100.0 * left_n + 50 + i);
                CHECK(got_right[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)] ==
                      100.0 * right_n + i);
            }
        }
    }
}

TEST_CASE("mismatched tags abort the round") {
    TransportParams params;
    RingTransport tr(2, Mode::VirtualTime, params);
    int failures = 0;
    std::mutex mu;
    on_ranks(2, [&](int r) {
        std::vector<double> p{1.0}, a(1), b(1);
        try {
            tr.exchange(r, bytes_of(p), bytes_of(p), static_cast<std::uint64_t>(r), bytes_of_mut(a),
                        bytes_of_mut(b));
        } catch (const TagMismatch&) {
            std::lock_guard lk(mu);
            ++failures;
        } catch (const TransportAborted&) {
            std::lock_guard lk(mu);
            ++failures;
        }
    });
    CHECK(failures == 2);
}

TEST_CASE("payload size mismatch is detected") {
    TransportParams params;
    RingTransport tr(2, Mode::VirtualTime, params);
    int failures = 0;
    std::mutex mu;
    on_ranks(2, [&](int r) {
        std::vector<double> p(r == 0 ? 1 : 2, 1.0), a(8), b(8);
        try {
            tr.exchange(r, bytes_of(p), bytes_of(p), 1, bytes_of_mut(a), bytes_of_mut(b));
        } catch (const PayloadSizeMismatch&) {
            std::lock_guard lk(mu);
            ++failures;
        } catch (const TransportAborted&) {
            std::lock_guard lk(mu);
            ++failures;
        }
    });
    CHECK(failures == 2);
}

TEST_CASE("virtual runs produce identical logs across repetitions") {
    auto run_once = [] {
        TransportParams params;
        params.alpha = 2e-5;
        params.beta = 1e-9;
        RingTransport tr(3, Mode::VirtualTime, params, true);
        on_ranks(3, [&](int r) {
            std::vector<double> p(4, r), a(4), b(4);
            for (int round = 0; round < 6; ++round) {
                tr.advance_clock(r, static_cast<std::uint64_t>(10 * (r + 1)));
                tr.exchange(r, bytes_of(p), bytes_of(p), static_cast<std::uint64_t>(round),
                            bytes_of_mut(a), bytes_of_mut(b));
            }
        });
        std::ostringstream os;
        RingTransport::export_log(tr.sorted_log(), os);
        return std::make_pair(os.str(), tr.clock(0));
    };
    const auto [log1, clock1] = run_once();
    const auto [log2, clock2] = run_once();
    CHECK(log1 == log2);
    CHECK(clock1 == clock2);
    CHECK(!log1.empty());
}
