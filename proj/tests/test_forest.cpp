#include <doctest.h>

#include <set>

#include "pmgame/forest.hpp"
#include "pmgame/rng.hpp"
#include "oracles.hpp"

using namespace pmg;

namespace {

// 9-vertex augmenting tree: 0 -> {1,2}, 1 -> {3}, 2 -> {4}, 3 -> {5,6},
// 5 -> {7}, 6 -> {8}. Leaves 4, 7, 8.
AugTree nine_tree() {
    AugTree t = AugTree::singleton(0);
    t.add_child(0, 1);
    t.add_child(0, 2);
    t.add_child(1, 3);
    t.add_child(2, 4);
    t.add_child(3, 5);
    t.add_child(3, 6);
    t.add_child(5, 7);
    t.add_child(6, 8);
    return t;
}

std::vector<std::pair<int, int>> as_pairs(const std::vector<Edge>& es) {
    std::vector<std::pair<int, int>> out;
    for (Edge e : es) out.push_back({e.u, e.v});
    return out;
}

// random augmenting tree on 3..21 vertices with fresh ids
AugTree random_aug_tree(Rng& rng, int max_verts) {
    AugTree t = AugTree::singleton(0);
    int next = 1;
    while (t.size() + 2 <= max_verts) {
        auto vs = t.vertices();
        VertexId v = vs[rng.below(vs.size())];
        if (t.nodes.at(v).depth % 2 == 1) {
            if (!t.nodes.at(v).children.empty()) continue; // odd nodes: exactly one child
            t.add_child(v, next++);
        } else {
            // even depth: grow a child plus that child's mandatory child
            t.add_child(v, next++);
            t.add_child(next - 1, next);
            ++next;
        }
        if (rng.below(4) == 0) break;
    }
    return t;
}

} // namespace

TEST_CASE("structure accessors on the 9-vertex tree") {
    AugTree t = nine_tree();
    CHECK(t.size() == 9);
    CHECK(t.depth(8) == 4);
    CHECK(t.leaves() == std::vector<VertexId>{4, 7, 8});
    CHECK(t.degree(0) == 2);
    CHECK(t.degree(3) == 3);
    CHECK(t.degree(8) == 1);
    auto es = t.edges();
    CHECK(es.size() == 8);
    CHECK(std::is_sorted(es.begin(), es.end()));
    CHECK(is_augmenting(t));
}

TEST_CASE("add_child guards") {
    AugTree t = AugTree::singleton(5);
    CHECK_THROWS(t.add_child(9, 1));
    t.add_child(5, 1);
    CHECK_THROWS(t.add_child(5, 1));
}

TEST_CASE("augmenting property: odd-depth nodes need exactly one child") {
    AugTree t = AugTree::singleton(0);
    t.add_child(0, 1);
    CHECK_FALSE(is_augmenting(t)); // odd node 1 childless
    t.add_child(1, 2);
    CHECK(is_augmenting(t));
    t.add_child(1, 3);
    CHECK_FALSE(is_augmenting(t)); // two children at odd depth
}

TEST_CASE("canonical matching N_T of the 9-vertex tree") {
    auto nt = canonical_matching(nine_tree());
    CHECK(nt == std::vector<Edge>{{1, 3}, {2, 4}, {5, 7}, {6, 8}});
}

TEST_CASE("leaf swap N_x: path edges toggled") {
    AugTree t = nine_tree();
    CHECK(leaf_swap_matching(t, 7) == std::vector<Edge>{{0, 1}, {2, 4}, {3, 5}, {6, 8}});
    CHECK(leaf_swap_matching(t, 4) == std::vector<Edge>{{0, 2}, {1, 3}, {5, 7}, {6, 8}});
    CHECK(leaf_swap_matching(t, 8) == std::vector<Edge>{{0, 1}, {2, 4}, {3, 6}, {5, 7}});
    CHECK_THROWS(leaf_swap_matching(t, 3)); // not a leaf
    CHECK_THROWS(leaf_swap_matching(t, 99));
}

TEST_CASE("leaf swap vs exhaustive oracle on random augmenting trees") {
    Rng rng(321);
    for (int iter = 0; iter < 120; ++iter) {
        AugTree t = random_aug_tree(rng, 17);
        REQUIRE(is_augmenting(t));
        REQUIRE(t.size() % 2 == 1);
        auto edges = as_pairs(t.edges());
        for (VertexId x : t.leaves()) {
            auto nx = leaf_swap_matching(t, x);
            std::vector<int> rest;
            for (VertexId v : t.vertices())
                if (v != x) rest.push_back(v);
            CHECK(oracle::covers_exactly(rest, edges, as_pairs(nx)));
            CHECK(oracle::max_matching(t.size(), edges) == (t.size() - 1) / 2);
        }
    }
}

TEST_CASE("tree_perfect_matching: greedy equals exhaustive existence") {
    // paths
    CHECK(tree_perfect_matching({0, 1, 2, 3}, {{0, 1}, {1, 2}, {2, 3}}).value() ==
          std::vector<Edge>{{0, 1}, {2, 3}});
    CHECK_FALSE(tree_perfect_matching({0, 1, 2}, {{0, 1}, {1, 2}}).has_value());
    // star K_{1,3}: even order but no perfect matching
    CHECK_FALSE(tree_perfect_matching({0, 1, 2, 3}, {{0, 1}, {0, 2}, {0, 3}}).has_value());
    // malformed inputs
    CHECK_THROWS(tree_perfect_matching({0, 1, 2, 3}, {{0, 1}, {2, 3}}));          // forest
    CHECK_THROWS(tree_perfect_matching({0, 1}, {{0, 1}, {0, 1}}));                // |E| mismatch
    CHECK_THROWS(tree_perfect_matching({0, 1, 2, 3}, {{0, 1}, {1, 2}, {1, 9}})); // foreign vertex
}

TEST_CASE("tree_perfect_matching vs oracle on random trees") {
    Rng rng(99);
    for (int iter = 0; iter < 300; ++iter) {
        int n = 2 + static_cast<int>(rng.below(15));
        std::vector<VertexId> verts(n);
        std::vector<Edge> edges;
        for (int v = 0; v < n; ++v) {
            verts[v] = v;
            if (v > 0) edges.push_back(make_edge(v, static_cast<int>(rng.below(v))));
        }
        auto got = tree_perfect_matching(verts, edges);
        bool expect = n % 2 == 0 &&
                      oracle::max_matching(n, as_pairs(edges)) == n / 2;
        CHECK(got.has_value() == expect);
        if (got) {
            std::vector<int> vs(verts.begin(), verts.end());
            CHECK(oracle::covers_exactly(vs, as_pairs(edges), as_pairs(*got)));
        }
        CHECK(is_matchable_tree(verts, edges) == expect);
    }
}

TEST_CASE("tau, is_nice, is_small against a board") {
    Board board = new_board(16, 3);
    Params params = derive_params(16, 1.0, Profile::Desk);
    params.ell = 3;
    params.troublesome_threshold = 2.0;

    AugTree t = nine_tree();
    CHECK(tau(board, t.vertices(), params) == 0);
    CHECK(is_nice(t, board, params));
    CHECK(is_small(t, board, params)); // 9 < 4*(0+3)

    params.ell = 2;
    CHECK_FALSE(is_nice(t, board, params)); // 3 leaves != 2
    CHECK_FALSE(is_small(t, board, params)); // 9 >= 4*(0+2)

    // make leaf 4 troublesome: dB(4) = 3 > 2
    params.ell = 3;
    board.claim(make_edge(4, 10), Owner::Breaker);
    board.claim(make_edge(4, 11), Owner::Breaker);
    board.claim(make_edge(4, 12), Owner::Breaker);
    CHECK(tau(board, t.vertices(), params) == 1);
    CHECK_FALSE(is_nice(t, board, params)); // troublesome leaf
    CHECK(is_small(t, board, params));      // 9 < 4*(1+3)
}

TEST_CASE("is_nice: troublesome internal even node is exempt from the 2-child rule") {
    Board board = new_board(16, 3);
    Params params = derive_params(16, 1.0, Profile::Desk);
    params.ell = 2;
    params.troublesome_threshold = 2.0;

    // 0 -> 1 -> 2 -> {3, 5}, 3 -> 4, 5 -> 6: even internal node 2 has two
    // children, even internal node 0 has one -> not nice unless 0 is troublesome
    AugTree t = AugTree::singleton(0);
    t.add_child(0, 1);
    t.add_child(1, 2);
    t.add_child(2, 3);
    t.add_child(3, 4);
    t.add_child(2, 5);
    t.add_child(5, 6);
    REQUIRE(t.leaves() == std::vector<VertexId>{4, 6});
    CHECK_FALSE(is_nice(t, board, params));
    for (VertexId w : {10, 11, 12}) board.claim(make_edge(0, w), Owner::Breaker);
    CHECK(is_nice(t, board, params));
}
