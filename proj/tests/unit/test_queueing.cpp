#include "pullstream/queueing.hpp"

#include <doctest.h>

#include <random>

using namespace pullstream;

namespace {

ChunkRecord chunk(std::int64_t index, Bits bits)
{
    ChunkRecord r;
    r.index = index;
    r.total_bits = bits;
    r.request_slot = index;
    return r;
}

} // namespace

TEST_CASE("enqueue from empty")
{
    RequestQueue q;
    q.enqueue(chunk(1, 9000));
    CHECK(q.backlog() == 9000);
    CHECK(q.ledger().size() == 1);
    CHECK(q.ledger().front().bits_remaining == 9000);
}

TEST_CASE("two chunks add up")
{
    RequestQueue q;
    q.enqueue(chunk(1, 9000));
    q.enqueue(chunk(2, 4500));
    CHECK(q.backlog() == 13500);
}

TEST_CASE("skipping a chunk is a sequencing error")
{
    RequestQueue q;
    q.enqueue(chunk(3, 100));
    CHECK_THROWS_AS(q.enqueue(chunk(5, 100)), SequencingError);
    CHECK_THROWS_AS(q.enqueue(chunk(3, 100)), SequencingError);
    CHECK_THROWS_AS(q.enqueue(chunk(2, 100)), SequencingError);
    CHECK_NOTHROW(q.enqueue(chunk(4, 100)));
}

TEST_CASE("scalar backlog recursion")
{
    CHECK(next_backlog(100, 40, 30) == 90);
    CHECK(next_backlog(10, 50, 0) == 0);
    CHECK(next_backlog(0, 0, 9000) == 9000);
}

TEST_CASE("service beyond the ledger completes everything")
{
    RequestQueue q;
    q.enqueue(chunk(1, 6));
    q.enqueue(chunk(2, 4));
    const auto done = q.serve(50);
    REQUIRE(done.size() == 2);
    CHECK(done[0].index == 1);
    CHECK(done[1].index == 2);
    CHECK(q.backlog() == 0);
    CHECK(q.empty());
    CHECK(q.bits_served() == 10);
}

TEST_CASE("partial service keeps the head of line")
{
    RequestQueue q;
    q.enqueue(chunk(1, 100));
    q.enqueue(chunk(2, 100));
    CHECK(q.serve(60).empty());
    CHECK(q.ledger().front().bits_remaining == 40);
    const auto done = q.serve(50);
    REQUIRE(done.size() == 1);
    CHECK(done[0].index == 1);
    CHECK(q.ledger().front().bits_remaining == 90);
    CHECK(q.backlog() == 90);
}

TEST_CASE("ledger conservation and ordering under random traffic")
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<Bits> size(1, 10000);
    std::uniform_int_distribution<Bits> service(0, 15000);
    RequestQueue q;
    std::int64_t next_done = 1;
    for (std::int64_t t = 1; t <= 5000; ++t) {
        q.enqueue(chunk(t, size(rng)));
        for (const auto& c : q.serve(service(rng)))
            CHECK(c.index == next_done++);
        Bits sum = 0;
        for (const auto& r : q.ledger()) {
            CHECK(r.bits_remaining > 0);
            CHECK(r.bits_remaining <= r.total_bits);
            sum += r.bits_remaining;
        }
        CHECK(sum == q.backlog());
        CHECK(q.bits_arrived() - q.bits_served() == q.backlog());
        CHECK(q.backlog() >= 0);
    }
}

TEST_CASE("virtual queue update")
{
    CHECK(update_virtual_queue({0.0}, 0.9, 0.9).value == 0.0);
    CHECK(update_virtual_queue({0.5}, 0.2, 1.0).value == 0.0);
    CHECK(update_virtual_queue({0.5}, 0.9, 0.8).value == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("virtual queue stays nonnegative")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    VirtualQueue theta;
    for (int i = 0; i < 10000; ++i) {
        theta = update_virtual_queue(theta, unit(rng), unit(rng));
        CHECK(theta.value >= 0.0);
    }
}
