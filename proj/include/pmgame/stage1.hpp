#pragma once

#include <map>
#include <optional>
#include <set>

#include "pmgame/board.hpp"
#include "pmgame/forest.hpp"

namespace pmg {

struct Stage1Output {
    std::vector<Edge> M;
    std::vector<AugTree> nice_trees; // ordered by root id
    std::vector<MatchableTree> matchable_trees;
    long maker_moves = 0;
    int p = 0, q = 0;
};

// Maker's Stage-1 case algorithm. Case priority per turn:
//   troublesome leaf present -> Case 2a, falling through to 2b
//   else Case 1a while p > pairing_stop and an unclaimed singleton pair exists
//   else Case 1b (two-turn growth) on a tree with < ell leaves
//   else terminate.
// A committed two-turn step (1b) always finishes before the next case scan.
class Stage1Engine {
  public:
    struct Step {
        enum class Kind { Claim, Complete, Fail } kind;
        VertexId u = -1, v = -1; // u is the tree-side vertex on growth claims
        std::string tag;         // 1a | 1b.1 | 1b.2 | 2a | 2b
        std::string code;        // failure code on Fail
        std::string detail;
    };

    Stage1Engine(const Params& params);

    Step step(const Board& board);

    int p() const { return static_cast<int>(singletons_.size() + trees_.size()); }
    int q() const { return static_cast<int>(matchables_.size()); }
    long maker_moves() const { return maker_moves_; }

    Stage1Output output() const;
    std::vector<std::vector<VertexId>> leaf_sets() const; // per nice tree, root order
    ojson dump_registry() const;

  private:
    enum class VClass : uint8_t { Singleton, InM, InAug, InMatchable };
    struct Pending {
        VertexId v;    // the growing leaf
        VertexId root; // its tree
        VertexId x, y; // planned second matching edge, -1 if unplanned
    };

    void process_log(const Board& board);
    bool troub(VertexId v) const { return troublesome_.count(v) > 0; }

    std::optional<std::pair<VertexId, VertexId>> select_troublesome_leaf(const Board& board) const;
    // first M-edge (w, mate(w)) with both ends nontroublesome and (v,w) unclaimed,
    // scanning w ascending; skip_edge_of excludes one M-edge (1b second pick)
    std::optional<VertexId> find_matching_partner(const Board& board, VertexId v,
                                                  VertexId skip_edge_of) const;

    Step do_pending(const Board& board);
    Step do_case2(const Board& board, VertexId v);
    std::optional<Edge> case1a_pair(const Board& board) const;
    std::optional<VertexId> pick_growth_tree() const; // root id
    Step complete(const Board& board);

    AugTree& materialize_tree(VertexId v); // promotes a singleton to a rooted tree
    void consume_m_edge(VertexId w, VertexId z, VertexId attach_to);

    Params params_;
    int n_;
    std::vector<VClass> vclass_;
    std::vector<VertexId> mate_;    // for InM
    std::vector<VertexId> tree_of_; // root id for InAug
    std::set<VertexId> singletons_;
    Bitset singleton_bits_;
    Bitset m_bits_;
    std::map<VertexId, AugTree> trees_; // multi-vertex augmenting trees, keyed by root
    std::vector<MatchableTree> matchables_;
    std::set<VertexId> troublesome_;
    std::optional<Pending> pending_;
    size_t log_cursor_ = 0;
    long maker_moves_ = 0;
};

} // namespace pmg
