#include <doctest.h>

#include "pmgame/audit.hpp"
#include "pmgame/breakers.hpp"
#include "pmgame/maker.hpp"
#include "pmgame/stage1.hpp"

using namespace pmg;

namespace {

Params tiny_params(int n, int pairing_stop, int p_min, int p_max) {
    Params p = derive_params(n, 1.0, Profile::Desk);
    p.troublesome_threshold = 2.0;
    p.pairing_stop = pairing_stop;
    p.p_min = p_min;
    p.p_max = p_max;
    return p;
}

// engine step + board claim, asserting the step is a Claim with the given tag
Edge expect_claim(Stage1Engine& eng, Board& board, const std::string& tag) {
    auto st = eng.step(board);
    REQUIRE(st.kind == Stage1Engine::Step::Kind::Claim);
    REQUIRE(st.tag == tag);
    Edge e = make_edge(st.u, st.v);
    board.claim(e, Owner::Maker);
    return e;
}

} // namespace

TEST_CASE("unopposed run: pair to the floor, grow every tree to ell leaves") {
    // n=64 desk: p_min=4, pairing_stop=9, ell=2. Pairing walks p from 64 down
    // to 8, growth turns the 8 leftover singletons into 5-vertex trees.
    // Move count: (n-p)/2 pairs + 2p(ell-1) growth claims = 28 + 16 = 44.
    Params params = derive_params(64, 1.0, Profile::Desk);
    REQUIRE(params.p_min == 4);
    REQUIRE(params.pairing_stop == 9);

    Board board = new_board(64, 0);
    Stage1OnlyMaker maker(params);
    NullBreaker breaker;
    GameResult res = run_game(board, maker, breaker, 7, params);

    CHECK(res.outcome == Outcome::Stage1Complete);
    CHECK(res.maker_moves == 44);
    CHECK(res.stage1_moves == 44);
    CHECK(res.p == 8);
    CHECK(res.q == 0);

    const ojson& reg = res.transcript.footer.at("registry");
    CHECK(reg.at("singletons").empty());
    CHECK(reg.at("M").size() == 12); // 28 pairs made, 16 consumed by growth
    REQUIRE(reg.at("nice_trees").size() == 8);
    for (const auto& t : reg.at("nice_trees")) {
        CHECK(t.at("nodes").size() == 5);
        CHECK(t.at("leaves").size() == 2);
    }
    CHECK(reg.at("matchable_trees").empty());

    // deterministic claim order: lowest pairs first, then two-turn growth
    const auto& body = res.transcript.body;
    CHECK(body[0].at("case") == "1a");
    CHECK(body[0].at("u") == 0);
    CHECK(body[0].at("v") == 1);
    CHECK(body[28].at("case") == "1b.1");
    CHECK(body[28].at("u") == 56);
    CHECK(body[28].at("v") == 0);
    CHECK(body[29].at("case") == "1b.2");
    CHECK(body[29].at("u") == 56);
    CHECK(body[29].at("v") == 2);

    AuditReport rep = audit_transcript(res.transcript);
    CHECK(rep.ok);
    for (const auto& inv : rep.invariants) {
        CAPTURE(inv.name);
        CHECK(inv.pass);
    }
}

TEST_CASE("case 1a picks the lowest unclaimed singleton pair") {
    Params params = tiny_params(8, 3, 2, 8);
    Board board = new_board(8, 1);
    Stage1Engine eng(params);

    CHECK(expect_claim(eng, board, "1a") == Edge{0, 1});
    board.claim(make_edge(2, 3), Owner::Breaker); // steal the next natural pair
    CHECK(expect_claim(eng, board, "1a") == Edge{2, 4});
    CHECK(eng.p() == 4);
}

TEST_CASE("case 2a: troublesome leaf extends with a matching edge") {
    Params params = tiny_params(8, 5, 2, 8);
    Board board = new_board(8, 3);
    Stage1Engine eng(params);
    CHECK(expect_claim(eng, board, "1a") == Edge{0, 1});
    CHECK(expect_claim(eng, board, "1a") == Edge{2, 3});
    REQUIRE(eng.p() == 4); // {4..7} singletons

    for (int w : {5, 6, 7}) board.claim(make_edge(4, w), Owner::Breaker); // dB(4)=3 > 2
    CHECK(expect_claim(eng, board, "2a") == Edge{0, 4});
    CHECK(eng.p() == 4); // singleton became a tree; p unchanged

    auto reg = eng.dump_registry();
    REQUIRE(reg.at("nice_trees").size() == 1);
    CHECK(reg.at("nice_trees")[0].at("root") == 4);
    CHECK(reg.at("nice_trees")[0].at("leaves") == std::vector<VertexId>{1});
}

TEST_CASE("case 2b: starved troublesome leaf closes into a matchable tree") {
    Params params = tiny_params(8, 5, 2, 8);
    Board board = new_board(8, 3);
    Stage1Engine eng(params);
    expect_claim(eng, board, "1a"); // (0,1)
    expect_claim(eng, board, "1a"); // (2,3)
    for (int w : {5, 6, 7}) board.claim(make_edge(4, w), Owner::Breaker);
    expect_claim(eng, board, "2a"); // (0,4): tree 4 -> 0 -> 1

    // make leaf 1 troublesome with its only M-edge options blocked; (1,6)
    // keeps 6 at the threshold without crossing it
    for (int w : {2, 3, 6}) board.claim(make_edge(1, w), Owner::Breaker);
    CHECK(expect_claim(eng, board, "2b") == Edge{1, 5});

    auto reg = eng.dump_registry();
    CHECK(reg.at("nice_trees").empty());
    REQUIRE(reg.at("matchable_trees").size() == 1);
    const auto& mt = reg.at("matchable_trees")[0];
    CHECK(mt.at("verts") == std::vector<VertexId>{0, 1, 4, 5});
    CHECK(mt.at("matching") == ojson::parse("[[0,4],[1,5]]"));
    CHECK(eng.p() == 2);
    CHECK(eng.q() == 1);
}

TEST_CASE("case 2b starves out: CLOSE_STARVED") {
    Params params = tiny_params(8, 5, 2, 8);
    Board board = new_board(8, 3);
    Stage1Engine eng(params);
    expect_claim(eng, board, "1a");
    expect_claim(eng, board, "1a");
    // vertex 4 troublesome, every escape blocked: M partners 0..3 and the
    // singletons 5..7 all claimed at 4
    for (int w : {0, 1, 2, 3, 5, 6, 7}) board.claim(make_edge(4, w), Owner::Breaker);
    auto st = eng.step(board);
    CHECK(st.kind == Stage1Engine::Step::Kind::Fail);
    CHECK(st.code == "CLOSE_STARVED");
}

TEST_CASE("case 1b second claim re-validates after Breaker interference") {
    Params params = tiny_params(12, 3, 2, 12);
    Board board = new_board(12, 1);
    Stage1Engine eng(params);
    for (Edge want : {Edge{0, 1}, Edge{2, 3}, Edge{4, 5}, Edge{6, 7}, Edge{8, 9}})
        CHECK(expect_claim(eng, board, "1a") == want);
    REQUIRE(eng.p() == 2); // singletons {10, 11}

    CHECK(expect_claim(eng, board, "1b.1") == Edge{0, 10}); // planned second: (10,2)
    board.claim(make_edge(2, 10), Owner::Breaker);          // steal the plan
    CHECK(expect_claim(eng, board, "1b.2") == Edge{3, 10}); // falls to edge (2,3) via 3

    auto reg = eng.dump_registry();
    REQUIRE(reg.at("nice_trees").size() == 1);
    CHECK(reg.at("nice_trees")[0].at("root") == 10);
    CHECK(reg.at("nice_trees")[0].at("leaves") == std::vector<VertexId>{1, 2});
}

TEST_CASE("growth with no matching edges: GROWTH_STARVED") {
    Params params = tiny_params(8, 8, 2, 8); // p never exceeds pairing_stop
    Board board = new_board(8, 1);
    Stage1Engine eng(params);
    auto st = eng.step(board);
    CHECK(st.kind == Stage1Engine::Step::Kind::Fail);
    CHECK(st.code == "GROWTH_STARVED");
}

TEST_CASE("termination below p_min: PAIR_STARVED") {
    Params params = tiny_params(8, 1, 4, 8); // pairing runs straight past p_min
    Board board = new_board(8, 1);
    Stage1Engine eng(params);
    for (int i = 0; i < 4; ++i) expect_claim(eng, board, "1a");
    auto st = eng.step(board);
    CHECK(st.kind == Stage1Engine::Step::Kind::Fail);
    CHECK(st.code == "PAIR_STARVED");
    CHECK(st.detail.find("p = 0") != std::string::npos);
}

TEST_CASE("a conceding stage1_only game lands the code in the footer") {
    Params params = tiny_params(8, 8, 2, 8);
    Board board = new_board(8, 1);
    Stage1OnlyMaker maker(params);
    RandomBreaker breaker;
    GameResult res = run_game(board, maker, breaker, 3, params);
    CHECK(res.outcome == Outcome::Concede);
    CHECK(res.failure_code == "GROWTH_STARVED");
    CHECK(res.transcript.footer.at("outcome") == "concede:GROWTH_STARVED");
    CHECK(res.transcript.footer.contains("registry"));
}

TEST_CASE("output and leaf_sets are root-ordered") {
    Params params = derive_params(64, 1.0, Profile::Desk);
    Board board = new_board(64, 0);
    Stage1Engine eng(params);
    while (true) {
        auto st = eng.step(board);
        if (st.kind != Stage1Engine::Step::Kind::Claim) {
            REQUIRE(st.kind == Stage1Engine::Step::Kind::Complete);
            break;
        }
        board.claim(make_edge(st.u, st.v), Owner::Maker);
    }
    Stage1Output out = eng.output();
    CHECK(out.p == 8);
    CHECK(out.nice_trees.size() == 8);
    CHECK(std::is_sorted(out.M.begin(), out.M.end()));
    for (size_t i = 1; i < out.nice_trees.size(); ++i)
        CHECK(out.nice_trees[i - 1].root < out.nice_trees[i].root);
    auto sets = eng.leaf_sets();
    REQUIRE(sets.size() == 8);
    for (size_t i = 0; i < sets.size(); ++i) CHECK(sets[i] == out.nice_trees[i].leaves());
}
