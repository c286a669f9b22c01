#include <doctest.h>

#include "pmgame/board.hpp"

using namespace pmg;

TEST_CASE("fresh board counters") {
    Board b = new_board(1024, 147);
    CHECK(b.n() == 1024);
    CHECK(b.b() == 147);
    CHECK(b.remaining() == 523776); // C(1024, 2)
    CHECK(b.maker_moves() == 0);
    CHECK(b.breaker_moves() == 0);
    for (int v : {0, 511, 1023}) {
        CHECK(b.dB(v) == 0);
        CHECK(b.dM(v) == 0);
        CHECK(b.unclaimed_row(v).count() == 1023);
    }
}

TEST_CASE("board construction guards") {
    CHECK_THROWS(new_board(5, 1));
    CHECK_THROWS(new_board(2, 1));
    CHECK_THROWS(new_board(8, -1));
    CHECK_NOTHROW(new_board(8, 0)); // null-Breaker desk runs
}

TEST_CASE("claiming updates state, degrees, and the log") {
    Board b = new_board(8, 2);
    b.claim(make_edge(3, 1), Owner::Maker);
    CHECK(b.state(make_edge(1, 3)) == Owner::Maker);
    CHECK_FALSE(b.unclaimed(1, 3));
    CHECK(b.dM(1) == 1);
    CHECK(b.dM(3) == 1);
    CHECK(b.dB(1) == 0);
    b.claim(make_edge(1, 2), Owner::Breaker);
    CHECK(b.dB(1) == 1);
    CHECK(b.dB(2) == 1);
    CHECK(b.remaining() == 26);
    CHECK(b.maker_moves() == 1);
    CHECK(b.breaker_moves() == 1);
    REQUIRE(b.log().size() == 2);
    CHECK(b.log()[0].e == Edge{1, 3});
    CHECK(b.log()[0].who == Owner::Maker);
    CHECK(b.log()[1].who == Owner::Breaker);
    CHECK(b.degrees_consistent());
}

TEST_CASE("double claim throws; self edge throws") {
    Board b = new_board(6, 1);
    b.claim(make_edge(0, 1), Owner::Maker);
    CHECK_THROWS_AS(b.claim(make_edge(0, 1), Owner::Breaker), std::logic_error);
    CHECK_THROWS_AS(b.claim(make_edge(0, 1), Owner::Maker), std::logic_error);
    CHECK_THROWS(make_edge(4, 4));
}

TEST_CASE("unclaimed_row excludes both colors and self") {
    Board b = new_board(6, 1);
    b.claim(make_edge(0, 1), Owner::Maker);
    b.claim(make_edge(0, 2), Owner::Breaker);
    Bitset row = b.unclaimed_row(0);
    CHECK(row.count() == 3);
    CHECK_FALSE(row.test(0));
    CHECK_FALSE(row.test(1));
    CHECK_FALSE(row.test(2));
    CHECK(row.test(3));
}

TEST_CASE("unclaimed_between lists canonical sorted edges") {
    Board b = new_board(10, 1);
    std::vector<VertexId> A{1, 4}, B{7, 2};
    b.claim(make_edge(4, 7), Owner::Breaker);
    auto es = b.unclaimed_between(A, B);
    REQUIRE(es.size() == 3);
    CHECK(es[0] == Edge{1, 2});
    CHECK(es[1] == Edge{1, 7});
    CHECK(es[2] == Edge{2, 4});
}

TEST_CASE("troublesome predicate is a strict threshold") {
    Params p = derive_params(8, 1.0, Profile::Desk);
    p.troublesome_threshold = 2.0;
    Board b = new_board(8, 3);
    b.claim(make_edge(0, 1), Owner::Breaker);
    b.claim(make_edge(0, 2), Owner::Breaker);
    CHECK_FALSE(is_troublesome(b, 0, p)); // dB = 2 is not > 2
    b.claim(make_edge(0, 3), Owner::Breaker);
    CHECK(is_troublesome(b, 0, p));
    CHECK_FALSE(is_troublesome(b, 1, p));
}
