#pragma once

#include <map>
#include <vector>

#include "pmgame/board.hpp"
#include "pmgame/forest.hpp"
#include "pmgame/params.hpp"
#include "pmgame/rng.hpp"

namespace pmg {

// F': one vertex per nice tree; multiplicity = unclaimed board edges between
// leaf sets. Breaker claims from before Stage 2 are baked into the initial
// mult and excluded from dB_aux (danger measures in-phase pressure).
struct AuxMultigraph {
    int p = 0;
    int n = 0;
    std::vector<std::vector<VertexId>> leaf_sets; // S_i, tree root order
    std::vector<int> leaf_owner;                  // board vertex -> aux id, -1 otherwise
    std::vector<std::vector<int>> mult;           // symmetric, mult[i][i] = 0
    std::vector<std::vector<int>> pre_claimed;    // claimed before Stage 2 (constant)
    std::vector<int> dB_aux, dM_aux, out_deg;
    // Maker-claimed board edges per tree pair (i < j), claim order
    std::map<std::pair<int, int>, std::vector<Edge>> maker_edges;
    int min_degree = 0;        // build-time diagnostic
    double degree_bound = 0.0; // ell^2 (p-1) - ell n / sqrt(ln n)
    bool leaf_troublesome_warning = false;

    int mult_at(int i, int j) const { return mult[i][j]; }
    const std::vector<Edge>& maker_between(int i, int j) const;
    int maker_count(int i, int j) const;
};

AuxMultigraph build_aux(const std::vector<AugTree>& nice_trees, const Board& board,
                        const Params& params);

double danger(const AuxMultigraph& aux, int v, int b);

// Rotation closures over a simple adjacency view of Maker's aux graph.
// order[0] is the path's own free endpoint; each witness path starts at
// fixed_end and ends at the reachable endpoint.
struct Closure {
    std::vector<int> order;
    std::map<int, std::vector<int>> witness;
};

// Exact: endpoints reachable by ANY sequence of elementary rotations with
// fixed_end fixed (breadth-first over full path states). Exponential on dense
// graphs; intended for small V(P) and for oracle checks.
Closure rotation_closure(const std::vector<std::vector<char>>& adj, const std::vector<int>& path,
                         int fixed_end);

// Endpoint-keyed Pósa closure (one witness per endpoint). Polynomial; may
// under-approximate rotation_closure, but every returned endpoint/witness is
// valid, which is all Phase 2 needs. See notes in the repository docs.
Closure endpoint_closure(const std::vector<std::vector<char>>& adj, const std::vector<int>& path,
                         int fixed_end);

// Alternate edges of a spanning cycle, starting from the lowest-id vertex's
// lower-id side, mapped to board edges. p must be even.
std::vector<Edge> extract_leaf_matching(const std::vector<int>& cycle, const AuxMultigraph& aux);

class Stage2Engine {
  public:
    struct Step {
        enum class Kind { Claim, Win, Concede } kind;
        VertexId u = -1, v = -1; // board edge; u lies in the selected tree's leaf set (p1)
        std::string tag;         // p1 | p2
        ojson info;              // p2 witness path
        std::string code, detail;
        std::vector<int> cycle; // win: Hamilton cycle over aux ids
        std::vector<Edge> N;    // win: leaf matching
    };

    Stage2Engine(AuxMultigraph aux, const Params& params, size_t log_start);

    Step step(const Board& board, Rng& rng);

    const AuxMultigraph& aux() const { return aux_; }
    long claims_used() const { return claims_; }
    long monitor_events() const { return monitor_events_; }
    int phase() const { return phase_; }
    const std::vector<int>& path() const { return path_; }
    // M* adjacency frozen at the Phase 1 -> Phase 2 transition (empty before)
    const std::vector<std::vector<char>>& phase1_final() const { return phase1_final_; }

  private:
    void process_log(const Board& board);
    std::vector<std::vector<char>> maker_adjacency() const;
    bool cycle_closable(int a, int b) const; // maker edge(s) closing a V(P)-cycle
    Step phase1(const Board& board, Rng& rng);
    Step phase2(const Board& board);

    AuxMultigraph aux_;
    Params params_;
    int phase_ = 1;
    std::vector<std::vector<char>> phase1_final_;
    std::vector<int> path_;
    long claims_ = 0;
    long monitor_events_ = 0;
    std::vector<char> monitor_counted_;
    size_t log_cursor_;
};

} // namespace pmg
