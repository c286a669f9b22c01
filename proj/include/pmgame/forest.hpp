#pragma once

#include <map>
#include <optional>
#include <vector>

#include "pmgame/board.hpp"
#include "pmgame/types.hpp"

namespace pmg {

// Rooted tree with explicit depths. Depths are stored, not recomputed:
// niceness is a parity property and growth always appends at known depths.
struct AugTree {
    struct Node {
        VertexId parent = -1;
        int depth = 0;
        std::vector<VertexId> children; // insertion order = claim order
    };

    VertexId root = -1;
    std::map<VertexId, Node> nodes; // ordered: deterministic iteration

    static AugTree singleton(VertexId r) {
        AugTree t;
        t.root = r;
        t.nodes[r] = Node{-1, 0, {}};
        return t;
    }

    bool contains(VertexId v) const { return nodes.count(v) > 0; }
    int size() const { return static_cast<int>(nodes.size()); }
    int depth(VertexId v) const { return nodes.at(v).depth; }

    void add_child(VertexId parent, VertexId child);

    // Vertices with no children, ascending id.
    std::vector<VertexId> leaves() const;
    std::vector<VertexId> vertices() const;
    std::vector<Edge> edges() const; // parent links, canonical + sorted
    int degree(VertexId v) const;
};

struct MatchableTree {
    std::vector<VertexId> verts;
    std::vector<Edge> edges;
    std::vector<Edge> matching; // stored perfect matching
};

// Structural validity + the augmenting property (every odd-depth node has
// exactly one child). Leaves at even depth follow and are checked separately
// where needed.
bool is_augmenting(const AugTree& t);

// N_T: for each odd-depth node, the edge to its unique child. Covers V(T)-root.
std::vector<Edge> canonical_matching(const AugTree& t);

// N_x = N_T symmetric-difference E(P_x); covers V(T)-x. x must be a leaf.
std::vector<Edge> leaf_swap_matching(const AugTree& t, VertexId x);

int tau(const Board& board, const std::vector<VertexId>& S, const Params& params);

bool is_nice(const AugTree& t, const Board& board, const Params& params);
bool is_small(const AugTree& t, const Board& board, const Params& params);

// Greedy leaf-to-parent perfect matching; trees admit a forced matching order,
// so greedy is exact. Throws if (verts, edges) is not a tree.
std::optional<std::vector<Edge>> tree_perfect_matching(const std::vector<VertexId>& verts,
                                                       const std::vector<Edge>& edges);
bool is_matchable_tree(const std::vector<VertexId>& verts, const std::vector<Edge>& edges);

} // namespace pmg
