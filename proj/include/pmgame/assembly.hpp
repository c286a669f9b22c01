#pragma once

#include <string>
#include <vector>

#include "pmgame/board.hpp"
#include "pmgame/forest.hpp"
#include "pmgame/transcript.hpp"

namespace pmg {

struct AssemblyError : std::runtime_error {
    std::vector<VertexId> uncovered, doubled;
    AssemblyError(const std::string& what, std::vector<VertexId> unc, std::vector<VertexId> dup)
        : std::runtime_error(what), uncovered(std::move(unc)), doubled(std::move(dup)) {}
};

// M  ∪  N  ∪  (leaf_swap_matching(T_i, x_i) for each nice tree, where x_i is
// the leaf N matched in T_i)  ∪  (each matchable tree's stored matching).
// Throws AssemblyError on any coverage violation (upstream invariant breach).
std::vector<Edge> assemble_perfect_matching(const std::vector<Edge>& M,
                                            const std::vector<AugTree>& nice_trees,
                                            const std::vector<MatchableTree>& matchable_trees,
                                            const std::vector<Edge>& N, int n);

struct VerifyReport {
    bool ok = false;
    std::vector<std::string> violations;
};

// Independent check against the raw claim map only: pairwise vertex-disjoint,
// covers all n vertices, every edge Maker-claimed.
VerifyReport verify_perfect_matching(const Board& board, const std::vector<Edge>& edges);

// Post-game accounting: per-stage move counts, total vs n/2, the configured
// component-size bound, and Stage-2 usage vs 14p.
ojson move_accounting(const Transcript& t, const Params& params);

} // namespace pmg
