#include <doctest.h>

#include "flowrack/types.hpp"
#include "helpers.hpp"

using namespace flowrack;

TEST_CASE("dimensions must be strictly positive") {
    CHECK_THROWS_AS((Dimensions{0, 2, 1}.validate()), ValidationError);
    CHECK_THROWS_AS((Dimensions{2, 0, 1}.validate()), ValidationError);
    CHECK_THROWS_AS((Dimensions{2, 2, 0}.validate()), ValidationError);
    CHECK_NOTHROW((Dimensions{1, 1, 1}.validate()));
    CHECK((Dimensions{6, 7, 10}.capacity()) == 42);
}

TEST_CASE("rack matrix shape and entry validation") {
    CHECK_THROWS_AS(RackStateMatrix({2, 2, 3}, {{1, 2}}), DimensionMismatch);
    CHECK_THROWS_AS(RackStateMatrix({1, 2, 3}, {{1, 2, 3}}), DimensionMismatch);
    CHECK_THROWS_AS(RackStateMatrix({1, 2, 3}, {{1, 4}}), ValidationError);
    CHECK_THROWS_AS(RackStateMatrix({1, 2, 3}, {{1, -1}}), ValidationError);

    RackStateMatrix rack({2, 3, 5}, {{5, 1, 0}, {0, 0, 0}});
    CHECK(rack.at(1, 1) == 5);
    CHECK(rack.at(2, 3) == 0);
    CHECK_THROWS_AS(rack.at(3, 1), ValidationError);
    CHECK_THROWS_AS(rack.at(1, 4), ValidationError);
}

TEST_CASE("settled detection and fill accounting") {
    RackStateMatrix settled({2, 3, 4}, {{1, 2, 0}, {0, 0, 0}});
    CHECK(settled.settled());
    CHECK(settled.occupied_count(1) == 2);
    CHECK(settled.deepest_occupied(1) == 2);
    CHECK(settled.deepest_occupied(2) == 0);
    CHECK(settled.total_items() == 2);

    RackStateMatrix gapped({1, 3, 4}, {{1, 0, 2}});
    CHECK_FALSE(gapped.settled());
}

TEST_CASE("stock per type") {
    const auto stock = flowrack::testing::reference_rack().stock_by_type();
    CHECK(stock[1] == 3);
    CHECK(stock[2] == 3);
    CHECK(stock[4] == 5);
    CHECK(stock[10] == 9);
    CHECK(flowrack::testing::reference_rack().total_items() == 42);
}

TEST_CASE("request vector arithmetic") {
    RequestVector a({1, 2, 0});
    RequestVector b({3, 0, 1});
    CHECK((a + b) == RequestVector({4, 2, 1}));
    CHECK(a.total() == 3);
    CHECK(RequestVector::zeros(3).zero());
    CHECK_THROWS_AS(RequestVector({1, -2}), ValidationError);
    CHECK_THROWS_AS(a + RequestVector({1, 1}), LengthMismatch);
    CHECK_THROWS_AS(a.at(0), ValidationError);
    CHECK_THROWS_AS(a.at(4), ValidationError);
}
