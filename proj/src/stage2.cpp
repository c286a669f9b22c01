#include "pmgame/stage2.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <stdexcept>

namespace pmg {

const std::vector<Edge>& AuxMultigraph::maker_between(int i, int j) const {
    static const std::vector<Edge> empty;
    auto it = maker_edges.find({std::min(i, j), std::max(i, j)});
    return it == maker_edges.end() ? empty : it->second;
}

int AuxMultigraph::maker_count(int i, int j) const {
    return static_cast<int>(maker_between(i, j).size());
}

AuxMultigraph build_aux(const std::vector<AugTree>& nice_trees, const Board& board,
                        const Params& params) {
    AuxMultigraph aux;
    aux.p = static_cast<int>(nice_trees.size());
    aux.n = board.n();
    aux.leaf_owner.assign(board.n(), -1);
    for (int i = 0; i < aux.p; ++i) {
        auto lv = nice_trees[i].leaves();
        for (VertexId x : lv) {
            aux.leaf_owner[x] = i;
            if (is_troublesome(board, x, params)) aux.leaf_troublesome_warning = true;
        }
        aux.leaf_sets.push_back(std::move(lv));
    }
    aux.mult.assign(aux.p, std::vector<int>(aux.p, 0));
    aux.pre_claimed.assign(aux.p, std::vector<int>(aux.p, 0));
    aux.dB_aux.assign(aux.p, 0);
    aux.dM_aux.assign(aux.p, 0);
    aux.out_deg.assign(aux.p, 0);
    for (int i = 0; i < aux.p; ++i) {
        for (int j = i + 1; j < aux.p; ++j) {
            int unclaimed = 0, claimed = 0;
            for (VertexId a : aux.leaf_sets[i])
                for (VertexId b : aux.leaf_sets[j])
                    (board.unclaimed(a, b) ? unclaimed : claimed)++;
            aux.mult[i][j] = aux.mult[j][i] = unclaimed;
            aux.pre_claimed[i][j] = aux.pre_claimed[j][i] = claimed;
        }
    }
    const double ln = std::log(static_cast<double>(board.n()));
    const double ell = static_cast<double>(params.ell);
    aux.degree_bound = ell * ell * (aux.p - 1) - ell * board.n() / std::sqrt(ln);
    aux.min_degree = 0;
    for (int i = 0; i < aux.p; ++i) {
        int deg = 0;
        for (int j = 0; j < aux.p; ++j) deg += aux.mult[i][j];
        if (i == 0 || deg < aux.min_degree) aux.min_degree = deg;
    }
    return aux;
}

double danger(const AuxMultigraph& aux, int v, int b) {
    return aux.dB_aux[v] - 2.0 * b * aux.out_deg[v];
}

namespace {

std::vector<int> normalized(const std::vector<int>& path, int fixed_end) {
    if (path.empty()) throw std::invalid_argument("rotation closure: empty path");
    if (path.front() == fixed_end) return path;
    if (path.back() == fixed_end) return {path.rbegin(), path.rend()};
    throw std::invalid_argument("rotation closure: fixed_end is not a path endpoint");
}

// Elementary rotations of Q (front fixed): endpoint u = Q.back(), chord to
// Q[i] with i <= k-2 breaks (Q[i], Q[i+1]) and reverses the tail.
template <typename Visit>
void for_each_rotation(const std::vector<std::vector<char>>& adj, const std::vector<int>& q,
                       Visit&& visit) {
    const int k = static_cast<int>(q.size()) - 1;
    const int u = q[k];
    for (int i = 0; i + 2 <= k; ++i) {
        if (!adj[u][q[i]]) continue;
        std::vector<int> r(q.begin(), q.begin() + i + 1);
        r.insert(r.end(), q.rbegin(), q.rbegin() + (k - i));
        visit(std::move(r));
    }
}

} // namespace

Closure rotation_closure(const std::vector<std::vector<char>>& adj, const std::vector<int>& path,
                         int fixed_end) {
    std::vector<int> start = normalized(path, fixed_end);
    Closure cl;
    cl.order.push_back(start.back());
    cl.witness[start.back()] = start;
    std::set<std::vector<int>> seen{start};
    std::deque<std::vector<int>> queue{start};
    while (!queue.empty()) {
        std::vector<int> q = std::move(queue.front());
        queue.pop_front();
        for_each_rotation(adj, q, [&](std::vector<int> r) {
            if (!seen.insert(r).second) return;
            if (!cl.witness.count(r.back())) {
                cl.order.push_back(r.back());
                cl.witness[r.back()] = r;
            }
            queue.push_back(std::move(r));
        });
    }
    return cl;
}

Closure endpoint_closure(const std::vector<std::vector<char>>& adj, const std::vector<int>& path,
                         int fixed_end) {
    std::vector<int> start = normalized(path, fixed_end);
    Closure cl;
    cl.order.push_back(start.back());
    cl.witness[start.back()] = start;
    std::deque<std::vector<int>> queue{start};
    while (!queue.empty()) {
        std::vector<int> q = std::move(queue.front());
        queue.pop_front();
        for_each_rotation(adj, q, [&](std::vector<int> r) {
            if (cl.witness.count(r.back())) return;
            cl.order.push_back(r.back());
            cl.witness[r.back()] = r;
            queue.push_back(std::move(r));
        });
    }
    return cl;
}

std::vector<Edge> extract_leaf_matching(const std::vector<int>& cycle, const AuxMultigraph& aux) {
    const int p = aux.p;
    if (p % 2 != 0) throw std::invalid_argument("extract_leaf_matching: odd p cannot alternate");
    if (static_cast<int>(cycle.size()) != p)
        throw std::invalid_argument("extract_leaf_matching: cycle does not span F'");
    {
        std::set<int> distinct(cycle.begin(), cycle.end());
        if (static_cast<int>(distinct.size()) != p)
            throw std::invalid_argument("extract_leaf_matching: repeated vertex in cycle");
    }
    // rotate lowest id to front, then orient toward its lower-id neighbor
    std::vector<int> c = cycle;
    auto lowest = std::min_element(c.begin(), c.end());
    std::rotate(c.begin(), lowest, c.end());
    if (p > 2 && c.back() < c[1]) {
        std::reverse(c.begin() + 1, c.end());
    }
    std::vector<Edge> out;
    for (int k = 0; k < p; k += 2) {
        int i = c[k], j = c[k + 1];
        const auto& stored = aux.maker_between(i, j);
        if (stored.empty())
            throw std::invalid_argument("extract_leaf_matching: cycle edge has no Maker board edge");
        out.push_back(stored.front());
    }
    // one leaf per tree, vertex-disjoint
    std::set<int> trees_used;
    std::set<VertexId> verts;
    for (Edge e : out) {
        for (VertexId x : {e.u, e.v}) {
            if (!verts.insert(x).second)
                throw std::invalid_argument("extract_leaf_matching: overlapping board vertices");
            if (aux.leaf_owner[x] < 0 || !trees_used.insert(aux.leaf_owner[x]).second)
                throw std::invalid_argument("extract_leaf_matching: tree used twice");
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Stage2Engine::Stage2Engine(AuxMultigraph aux, const Params& params, size_t log_start)
    : aux_(std::move(aux)),
      params_(params),
      monitor_counted_(aux_.p, 0),
      log_cursor_(log_start) {}

void Stage2Engine::process_log(const Board& board) {
    const auto& log = board.log();
    for (; log_cursor_ < log.size(); ++log_cursor_) {
        const auto& entry = log[log_cursor_];
        int i = aux_.leaf_owner[entry.e.u];
        int j = aux_.leaf_owner[entry.e.v];
        if (i < 0 || j < 0 || i == j) continue;
        if (aux_.mult[i][j] > 0) {
            --aux_.mult[i][j];
            --aux_.mult[j][i];
        }
        if (entry.who == Owner::Breaker) {
            ++aux_.dB_aux[i];
            ++aux_.dB_aux[j];
            for (int x : {i, j}) {
                if (aux_.out_deg[x] < params_.stage2_outdeg && !monitor_counted_[x] &&
                    aux_.dB_aux[x] >= 3.0 * aux_.n) {
                    ++monitor_events_;
                    monitor_counted_[x] = 1;
                }
            }
        } else {
            ++aux_.dM_aux[i];
            ++aux_.dM_aux[j];
            aux_.maker_edges[{std::min(i, j), std::max(i, j)}].push_back(entry.e);
        }
    }
}

std::vector<std::vector<char>> Stage2Engine::maker_adjacency() const {
    std::vector<std::vector<char>> adj(aux_.p, std::vector<char>(aux_.p, 0));
    for (const auto& [pair, edges] : aux_.maker_edges) {
        if (!edges.empty()) adj[pair.first][pair.second] = adj[pair.second][pair.first] = 1;
    }
    return adj;
}

bool Stage2Engine::cycle_closable(int a, int b) const {
    // closing a cycle on V(P): |V(P)| = 2 needs two parallel Maker edges
    if (static_cast<int>(path_.size()) == 2) return aux_.maker_count(a, b) >= 2;
    return aux_.maker_count(a, b) >= 1;
}

Stage2Engine::Step Stage2Engine::step(const Board& board, Rng& rng) {
    process_log(board);
    if (phase_ == 1) {
        // Phase 1 ends when every vertex reaches the target outdegree.
        bool pending = false;
        for (int v = 0; v < aux_.p && !pending; ++v)
            if (aux_.out_deg[v] < params_.stage2_outdeg) pending = true;
        if (pending) return phase1(board, rng);
        phase_ = 2;
        phase1_final_ = maker_adjacency(); // M* frozen: phase 2 argues from this snapshot
    }
    return phase2(board);
}

Stage2Engine::Step Stage2Engine::phase1(const Board& board, Rng& rng) {
    // max danger among vertices below the outdegree target; ties -> lowest id
    int chosen = -1;
    double best = 0;
    for (int v = 0; v < aux_.p; ++v) {
        if (aux_.out_deg[v] >= params_.stage2_outdeg) continue;
        double d = danger(aux_, v, params_.b);
        if (chosen < 0 || d > best) {
            chosen = v;
            best = d;
        }
    }
    long total = 0;
    for (int j = 0; j < aux_.p; ++j) total += aux_.mult[chosen][j];
    if (total == 0) {
        return {Step::Kind::Concede, -1, -1, "", {}, kPhase1Isolated,
                "no unclaimed F' edge at aux vertex " + std::to_string(chosen),
                {}, {}};
    }
    if (claims_ + 1 > static_cast<long>(params_.stage2_budget_factor) * aux_.p) {
        return {Step::Kind::Concede, -1, -1, "", {}, kBudgetExceeded,
                "stage-2 budget " + std::to_string(params_.stage2_budget_factor * aux_.p) +
                    " exhausted in phase 1",
                {}, {}};
    }
    // uniform over the mult-weighted unclaimed board edges incident to chosen:
    // walk the pair lists in ascending j, then canonical edge order within a
    // pair (matches the mult bookkeeping)
    long k = static_cast<long>(rng.below(static_cast<uint64_t>(total)));
    for (int j = 0; j < aux_.p; ++j) {
        if (aux_.mult[chosen][j] == 0) continue;
        if (k >= aux_.mult[chosen][j]) {
            k -= aux_.mult[chosen][j];
            continue;
        }
        auto edges = board.unclaimed_between(aux_.leaf_sets[chosen], aux_.leaf_sets[j]);
        if (k >= static_cast<long>(edges.size())) break; // falls through to the sync error
        Edge e = edges[static_cast<size_t>(k)];
        ++aux_.out_deg[chosen];
        ++claims_;
        VertexId mine = aux_.leaf_owner[e.u] == chosen ? e.u : e.v;
        VertexId other = mine == e.u ? e.v : e.u;
        return {Step::Kind::Claim, mine, other, "p1", {}, "", "", {}, {}};
    }
    return {Step::Kind::Concede, -1, -1, "", {}, "INVARIANT_VIOLATION",
            "phase-1 multiplicity bookkeeping out of sync", {}, {}};
}

Stage2Engine::Step Stage2Engine::phase2(const Board& board) {
    auto adj = maker_adjacency();
    std::vector<char> in_path(aux_.p, 0);
    if (path_.empty()) path_.push_back(0);
    for (int v : path_) in_path[v] = 1;

    auto outside_neighbor = [&](int x) -> int {
        for (int y = 0; y < aux_.p; ++y)
            if (!in_path[y] && adj[x][y]) return y;
        return -1;
    };
    auto adopt = [&](std::vector<int> q) {
        path_ = std::move(q);
        std::fill(in_path.begin(), in_path.end(), 0);
        for (int v : path_) in_path[v] = 1;
    };

    bool moved = true;
    while (moved) {
        moved = false;
        // direct extension at both ends (tail first, ascending neighbor id)
        while (true) {
            int y = outside_neighbor(path_.back());
            if (y < 0) break;
            path_.push_back(y);
            in_path[y] = 1;
            moved = true;
        }
        while (true) {
            int y = outside_neighbor(path_.front());
            if (y < 0) break;
            path_.insert(path_.begin(), y);
            in_path[y] = 1;
            moved = true;
        }
        if (static_cast<int>(path_.size()) < 2) break;
        // rotation extension: any closure endpoint with an outside neighbor
        Closure c1 = endpoint_closure(adj, path_, path_.front());
        for (int u : c1.order) {
            int y = outside_neighbor(u);
            if (y >= 0) {
                auto q = c1.witness[u];
                q.push_back(y);
                adopt(std::move(q));
                moved = true;
                break;
            }
        }
        if (moved) continue;
        // second-level rotation extension, scanning the closure product space
        for (int u : c1.order) {
            Closure c2 = endpoint_closure(adj, c1.witness[u], u);
            for (int w : c2.order) {
                int y = outside_neighbor(w);
                if (y >= 0) {
                    auto q = c2.witness[w];
                    q.push_back(y);
                    adopt(std::move(q));
                    moved = true;
                    break;
                }
            }
            if (moved) break;
        }
    }

    if (static_cast<int>(path_.size()) == 1) {
        // isolated aux vertex after Phase 1: cannot happen with outdeg >= 1,
        // but keep an honest exit
        return {Step::Kind::Concede, -1, -1, "", {}, kPhase2Stuck,
                "maintained path cannot leave vertex " + std::to_string(path_.front()), {}, {}};
    }

    // Scan endpoint pairs over both closures: cycle detection first, then the
    // first claimable pair in deterministic closure order.
    Closure c1 = endpoint_closure(adj, path_, path_.front());
    std::vector<int> cycle_witness;
    int claim_u = -1, claim_w = -1;
    std::vector<int> claim_witness;
    for (int u : c1.order) {
        Closure c2 = endpoint_closure(adj, c1.witness[u], u);
        for (int w : c2.order) {
            if (w == u) continue;
            const auto& q = c2.witness[w]; // endpoints u .. w, V(q) = V(path_)
            if (cycle_witness.empty() && cycle_closable(u, w)) cycle_witness = q;
            if (claim_u < 0 && aux_.mult[std::min(u, w)][std::max(u, w)] > 0) {
                claim_u = u;
                claim_w = w;
                claim_witness = q;
            }
        }
        if (!cycle_witness.empty()) break; // victory check has priority
    }

    if (!cycle_witness.empty()) {
        if (static_cast<int>(cycle_witness.size()) == aux_.p) {
            std::vector<Edge> N = extract_leaf_matching(cycle_witness, aux_);
            return {Step::Kind::Win, -1, -1, "", {}, "", "", cycle_witness, N};
        }
        // non-spanning cycle: extend through any outside attachment, else the
        // component is exhausted and the game is lost
        for (size_t ix = 0; ix < cycle_witness.size(); ++ix) {
            int x = cycle_witness[ix];
            int y = outside_neighbor(x);
            if (y < 0) continue;
            std::vector<int> q{y};
            for (size_t s = 0; s < cycle_witness.size(); ++s)
                q.push_back(cycle_witness[(ix + s) % cycle_witness.size()]);
            adopt(std::move(q));
            return phase2(board); // restart with the longer path
        }
        return {Step::Kind::Concede, -1, -1, "", {}, kPhase2Stuck,
                "Maker cycle spans only " + std::to_string(cycle_witness.size()) + " of " +
                    std::to_string(aux_.p) + " trees (non-spanning cycle)",
                {}, {}};
    }

    if (claim_u >= 0) {
        if (claims_ + 1 > static_cast<long>(params_.stage2_budget_factor) * aux_.p) {
            return {Step::Kind::Concede, -1, -1, "", {}, kBudgetExceeded,
                    "stage-2 budget " + std::to_string(params_.stage2_budget_factor * aux_.p) +
                        " exhausted in phase 2",
                    {}, {}};
        }
        auto edges = board.unclaimed_between(aux_.leaf_sets[claim_u], aux_.leaf_sets[claim_w]);
        if (edges.empty()) {
            return {Step::Kind::Concede, -1, -1, "", {}, "INVARIANT_VIOLATION",
                    "phase-2 multiplicity bookkeeping out of sync", {}, {}};
        }
        Edge e = edges.front();
        adopt(claim_witness);
        ++claims_;
        ojson info{{"path", claim_witness}, {"pair", ojson::array({claim_u, claim_w})}};
        return {Step::Kind::Claim, e.u, e.v, "p2", info, "", "", {}, {}};
    }

    return {Step::Kind::Concede, -1, -1, "", {}, kPhase2Stuck,
            "no rotation-reachable endpoint pair with an unclaimed F' edge", {}, {}};
}

} // namespace pmg
