#include <doctest.h>

#include <deque>
#include <random>
#include <set>
#include <vector>

#include "flowrack/marking.hpp"
#include "helpers.hpp"

using namespace flowrack;
using flowrack::testing::reference_rack;

TEST_CASE("building a marking from a settled snapshot") {
    Marking mk = Marking::from_matrix(RackStateMatrix({1, 2, 1}, {{1, 0}}));
    CHECK(mk.occupied_count() == 1);
    CHECK(mk.empty_count() == 1);
    CHECK(mk.type_at(1, 1) == 1);
    CHECK(mk.type_at(1, 2) == 0);
    CHECK(mk.conveyor_total() == 0);
    CHECK(mk.delivered_total() == 0);
}

TEST_CASE("building a marking from the full reference rack") {
    Marking mk = Marking::from_matrix(reference_rack());
    CHECK(mk.occupied_count() == 42);
    CHECK(mk.empty_count() == 0);
}

TEST_CASE("a gap in front of an item is rejected") {
    CHECK_THROWS_AS(Marking::from_matrix(RackStateMatrix({1, 2, 1}, {{0, 1}})), NonContiguousBin);
}

TEST_CASE("store places the item at the storage face") {
    Marking mk(Dimensions{1, 2, 1});
    mk.store_raw(1, 1);
    CHECK(mk.type_at(1, 2) == 1);
    CHECK(mk.type_at(1, 1) == 0);
}

TEST_CASE("store into a bin with an occupied storage face is not enabled") {
    Marking mk = Marking::from_matrix(RackStateMatrix({1, 2, 2}, {{1, 2}}));
    const Marking before = mk;
    CHECK_THROWS_AS(mk.store(1, 1), NotEnabled);
    CHECK(mk == before);
}

TEST_CASE("store then settle leaves the item at the retrieval face") {
    Marking mk(Dimensions{1, 3, 2});
    mk.store(2, 1);
    CHECK(mk.type_at(1, 1) == 2);
    CHECK(mk.type_at(1, 2) == 0);
    CHECK(mk.type_at(1, 3) == 0);
}

TEST_CASE("reinsert moves a conveyor token to the storage face") {
    Marking mk = Marking::from_matrix(RackStateMatrix({1, 2, 2}, {{2, 0}}));
    mk.recycle_raw(1);
    CHECK(mk.conveyor_count(2) == 1);
    mk.reinsert_raw(2, 1);
    CHECK(mk.conveyor_total() == 0);
    CHECK(mk.type_at(1, 2) == 2);
}

TEST_CASE("reinsert without a conveyor token is not enabled") {
    Marking mk(Dimensions{1, 2, 2});
    const Marking before = mk;
    CHECK_THROWS_AS(mk.reinsert(2, 1), NotEnabled);
    CHECK(mk == before);
}

TEST_CASE("recycle then reinsert conserves the item census") {
    Marking mk = Marking::from_matrix(RackStateMatrix({2, 2, 3}, {{3, 1}, {2, 0}}));
    const auto census = mk.item_census();
    mk.recycle(1);
    CHECK(mk.item_census() == census);
    mk.reinsert(3, 2);
    CHECK(mk.item_census() == census);
    CHECK(mk.occupied_count() == 3);
}

TEST_CASE("deliver evacuates the retrieval-face item") {
    Marking mk = Marking::from_matrix(RackStateMatrix({1, 2, 2}, {{1, 2}}));
    CHECK(mk.deliver_raw(1) == 1);
    CHECK(mk.type_at(1, 1) == 0);
    CHECK(mk.type_at(1, 2) == 2);
    CHECK(mk.delivered_count(1) == 1);
}

TEST_CASE("deliver from an empty bin is not enabled") {
    Marking mk(Dimensions{1, 2, 2});
    const Marking before = mk;
    CHECK_THROWS_AS(mk.deliver(1), NotEnabled);
    CHECK(mk == before);
}

TEST_CASE("repeated deliveries empty a full bin") {
    const int q = 4;
    Marking mk = Marking::from_matrix(RackStateMatrix({1, q, 4}, {{1, 2, 3, 4}}));
    for (int j = 1; j <= q; ++j) CHECK(mk.deliver(1) == j);
    CHECK(mk.occupied_count() == 0);
    CHECK(mk.delivered_total() == q);
    CHECK_THROWS_AS(mk.deliver(1), NotEnabled);
}

TEST_CASE("recycle sends the front item onto the conveyor") {
    Marking mk = Marking::from_matrix(RackStateMatrix({1, 2, 3}, {{3, 1}}));
    CHECK(mk.recycle_raw(1) == 3);
    CHECK(mk.conveyor_count(3) == 1);
    CHECK(mk.type_at(1, 1) == 0);
}

TEST_CASE("settle packs items to the front preserving order") {
    RackStateMatrix cells({1, 4, 4});
    cells.set(1, 2, 1);
    cells.set(1, 4, 2);
    Marking mk = Marking::from_cells(cells);
    mk.settle(1);
    CHECK(mk.type_at(1, 1) == 1);
    CHECK(mk.type_at(1, 2) == 2);
    CHECK(mk.type_at(1, 3) == 0);
    CHECK(mk.type_at(1, 4) == 0);
}

TEST_CASE("settle is idempotent") {
    Marking mk = Marking::from_matrix(reference_rack());
    const Marking once = mk;
    mk.settle_all();
    CHECK(mk == once);
}

TEST_CASE("to_matrix is definitional") {
    RackStateMatrix cells({3, 2, 5});
    cells.set(2, 1, 3);
    Marking mk = Marking::from_cells(cells);
    const auto matrix = mk.to_matrix();
    CHECK(matrix.at(2, 1) == 3);
    CHECK(matrix.total_items() == 1);
}

TEST_CASE("to_matrix round-trips the reference rack") {
    const auto rack = reference_rack();
    CHECK(Marking::from_matrix(rack).to_matrix() == rack);
}

TEST_CASE("deliver and settle shift the reference bin forward") {
    Marking mk = Marking::from_matrix(reference_rack());
    CHECK(mk.deliver(1) == 1);
    const auto row = mk.to_matrix().rows()[0];
    CHECK(row == std::vector<int>{2, 9, 8, 4, 6, 2, 0});
}

namespace {

// Every maximal shift-firing sequence from `mk` must end in the same state.
void collect_terminals(const Marking& mk, std::set<std::vector<std::vector<int>>>& terminals,
                       std::set<std::vector<std::vector<int>>>& seen) {
    if (!seen.insert(mk.to_matrix().rows()).second) return;
    bool any = false;
    for (int j = 2; j <= mk.dims().slots_per_bin; ++j) {
        if (!mk.can_shift(1, j)) continue;
        any = true;
        Marking next = mk;
        next.shift(1, j);
        collect_terminals(next, terminals, seen);
    }
    if (!any) terminals.insert(mk.to_matrix().rows());
}

}  // namespace

TEST_CASE("every shift order settles a bin to the same state") {
    for (int q = 1; q <= 4; ++q) {
        for (unsigned pattern = 0; pattern < (1u << q); ++pattern) {
            RackStateMatrix cells({1, q, q});
            int next_type = 1;
            for (int j = 1; j <= q; ++j) {
                if (pattern & (1u << (j - 1))) cells.set(1, j, next_type++);
            }
            Marking start = Marking::from_cells(cells);

            std::set<std::vector<std::vector<int>>> terminals;
            std::set<std::vector<std::vector<int>>> seen;
            collect_terminals(start, terminals, seen);
            REQUIRE(terminals.size() == 1);

            Marking settled = start;
            settled.settle(1);
            CHECK(*terminals.begin() == settled.to_matrix().rows());
            CHECK(settled.to_matrix().settled());
        }
    }
}

TEST_CASE("random firings keep the partition, the census and FIFO order") {
    std::mt19937_64 rng(20260810);
    const Dimensions dims{3, 4, 3};
    Marking mk = Marking::from_matrix(flowrack::testing::random_settled_rack(rng, dims));

    // Shadow FIFO queues, front of the bin first.
    std::vector<std::deque<int>> shadow(static_cast<size_t>(dims.bins));
    for (int k = 1; k <= dims.bins; ++k) {
        for (int j = 1; j <= dims.slots_per_bin; ++j) {
            if (mk.type_at(k, j) != 0) shadow[static_cast<size_t>(k - 1)].push_back(mk.type_at(k, j));
        }
    }

    auto census = mk.item_census();
    int fired = 0;
    int rejected = 0;
    while (fired < 2000) {
        const int bin = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(dims.bins));
        const int type = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(dims.num_types));
        const Marking before = mk;
        auto& queue = shadow[static_cast<size_t>(bin - 1)];
        try {
            switch (rng() % 4) {
                case 0:
                    mk.store(type, bin);
                    queue.push_back(type);
                    ++census[static_cast<size_t>(type)];
                    break;
                case 1:
                    mk.reinsert(type, bin);
                    queue.push_back(type);
                    break;
                case 2: {
                    const int delivered = mk.deliver(bin);
                    REQUIRE(!queue.empty());
                    CHECK(delivered == queue.front());
                    queue.pop_front();
                    break;
                }
                default: {
                    const int recycled = mk.recycle(bin);
                    REQUIRE(!queue.empty());
                    CHECK(recycled == queue.front());
                    queue.pop_front();
                    break;
                }
            }
            ++fired;
        } catch (const NotEnabled&) {
            CHECK(mk == before);
            ++rejected;
            continue;
        }
        CHECK(mk.occupied_count() + mk.empty_count() == dims.capacity());
        CHECK(mk.item_census() == census);
        CHECK(mk.settled());
    }
    CHECK(fired == 2000);
    CHECK(rejected > 0);
}
