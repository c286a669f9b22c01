#include "pmgame/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace pmg {

std::vector<Edge> assemble_perfect_matching(const std::vector<Edge>& M,
                                            const std::vector<AugTree>& nice_trees,
                                            const std::vector<MatchableTree>& matchable_trees,
                                            const std::vector<Edge>& N, int n) {
    std::vector<Edge> out = M;
    // x_i: the one leaf of tree i that N covers; the tree contributes the
    // swapped matching covering V(T_i) - x_i, and N covers x_i itself.
    std::set<VertexId> n_covered;
    for (Edge e : N) {
        n_covered.insert(e.u);
        n_covered.insert(e.v);
    }
    for (const AugTree& t : nice_trees) {
        std::vector<VertexId> hit;
        for (VertexId x : t.leaves())
            if (n_covered.count(x)) hit.push_back(x);
        if (hit.size() != 1)
            throw AssemblyError("leaf matching covers " + std::to_string(hit.size()) +
                                    " leaves of tree rooted at " + std::to_string(t.root),
                                {}, hit);
        auto swapped = leaf_swap_matching(t, hit.front());
        out.insert(out.end(), swapped.begin(), swapped.end());
    }
    out.insert(out.end(), N.begin(), N.end());
    for (const MatchableTree& t : matchable_trees)
        out.insert(out.end(), t.matching.begin(), t.matching.end());

    std::vector<int> cover(n, 0);
    for (Edge e : out) {
        if (e.u < 0 || e.v >= n)
            throw AssemblyError("edge out of range", {}, {});
        ++cover[e.u];
        ++cover[e.v];
    }
    std::vector<VertexId> uncovered, doubled;
    for (VertexId v = 0; v < n; ++v) {
        if (cover[v] == 0) uncovered.push_back(v);
        if (cover[v] > 1) doubled.push_back(v);
    }
    if (!uncovered.empty() || !doubled.empty())
        throw AssemblyError("assembled set is not a perfect matching (" +
                                std::to_string(uncovered.size()) + " uncovered, " +
                                std::to_string(doubled.size()) + " doubled)",
                            uncovered, doubled);
    std::sort(out.begin(), out.end());
    return out;
}

VerifyReport verify_perfect_matching(const Board& board, const std::vector<Edge>& edges) {
    VerifyReport rep;
    const int n = board.n();
    std::vector<int> cover(n, 0);
    for (Edge e : edges) {
        if (e.u < 0 || e.v >= n || e.u >= e.v) {
            rep.violations.push_back("malformed edge (" + std::to_string(e.u) + "," +
                                     std::to_string(e.v) + ")");
            continue;
        }
        if (board.state(e) != Owner::Maker)
            rep.violations.push_back("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                     ") is not Maker's");
        ++cover[e.u];
        ++cover[e.v];
    }
    int uncovered = 0, doubled = 0;
    for (VertexId v = 0; v < n; ++v) {
        if (cover[v] == 0) ++uncovered;
        if (cover[v] > 1) ++doubled;
    }
    if (uncovered) rep.violations.push_back(std::to_string(uncovered) + " vertices uncovered");
    if (doubled) rep.violations.push_back(std::to_string(doubled) + " vertices covered twice");
    rep.ok = rep.violations.empty();
    return rep;
}

ojson move_accounting(const Transcript& t, const Params& params) {
    long maker = 0, breaker = 0, stage1 = 0, stage2 = 0;
    for (const auto& rec : t.body) {
        if (rec.value("type", "") != "claim") continue;
        if (rec.value("player", "") == "B") {
            ++breaker;
            continue;
        }
        ++maker;
        (rec.value("stage", 0) == 1 ? stage1 : stage2)++;
    }
    const double n = params.n;
    const double ln = std::log(n);
    const double component_bound =
        24.0 * n * params.ell / std::sqrt(ln) + 4.0 * params.ell + 8.0 * n / std::sqrt(ln);
    const long half = params.n / 2;
    const int p = t.footer.value("p", 0);
    const long stage2_budget = static_cast<long>(params.stage2_budget_factor) * p;
    ojson rep{{"maker_moves", maker},
              {"breaker_moves", breaker},
              {"stage1_moves", stage1},
              {"stage2_moves", stage2},
              {"half_n", half},
              {"overhead_ratio", half > 0 ? (static_cast<double>(maker) - half) / half : 0.0},
              {"component_bound", component_bound},
              {"stage2_budget", stage2_budget},
              {"stage2_within_budget", p == 0 || stage2 <= stage2_budget}};
    return rep;
}

} // namespace pmg
