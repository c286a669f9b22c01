#include "pmgame/stage1.hpp"

#include <algorithm>

namespace pmg {

Stage1Engine::Stage1Engine(const Params& params)
    : params_(params),
      n_(params.n),
      vclass_(n_, VClass::Singleton),
      mate_(n_, -1),
      tree_of_(n_, -1),
      singleton_bits_(n_),
      m_bits_(n_) {
    for (VertexId v = 0; v < n_; ++v) singletons_.insert(v);
    singleton_bits_.set();
}

void Stage1Engine::process_log(const Board& board) {
    const auto& log = board.log();
    for (; log_cursor_ < log.size(); ++log_cursor_) {
        const auto& entry = log[log_cursor_];
        if (entry.who != Owner::Breaker) continue;
        for (VertexId v : {entry.e.u, entry.e.v})
            if (board.dB(v) > params_.troublesome_threshold) troublesome_.insert(v);
    }
}

std::optional<std::pair<VertexId, VertexId>> Stage1Engine::select_troublesome_leaf(
    const Board& board) const {
    // (j, v) maximizing d_B(v); ties by smallest vertex id. Singletons are
    // trees of T_i whose root is their only leaf.
    VertexId best = -1;
    int best_db = -1;
    for (VertexId v : troublesome_) {
        bool is_leaf = false;
        if (vclass_[v] == VClass::Singleton)
            is_leaf = true;
        else if (vclass_[v] == VClass::InAug)
            is_leaf = trees_.at(tree_of_[v]).nodes.at(v).children.empty();
        if (!is_leaf) continue;
        if (board.dB(v) > best_db) {
            best = v;
            best_db = board.dB(v);
        }
    }
    if (best < 0) return std::nullopt;
    return std::make_pair(tree_of_[best] >= 0 ? tree_of_[best] : best, best);
}

std::optional<VertexId> Stage1Engine::find_matching_partner(const Board& board, VertexId v,
                                                            VertexId skip_edge_of) const {
    for (size_t w = m_bits_.find_first(); w != Bitset::npos; w = m_bits_.find_next(w)) {
        VertexId wi = static_cast<VertexId>(w);
        VertexId z = mate_[wi];
        if (skip_edge_of >= 0 && (wi == skip_edge_of || z == skip_edge_of)) continue;
        if (troub(wi) || troub(z)) continue;
        if (!board.unclaimed(v, wi)) continue;
        return wi;
    }
    return std::nullopt;
}

AugTree& Stage1Engine::materialize_tree(VertexId v) {
    if (vclass_[v] == VClass::Singleton) {
        singletons_.erase(v);
        singleton_bits_.reset(v);
        vclass_[v] = VClass::InAug;
        tree_of_[v] = v;
        trees_.emplace(v, AugTree::singleton(v));
    }
    return trees_.at(tree_of_[v]);
}

void Stage1Engine::consume_m_edge(VertexId w, VertexId z, VertexId attach_to) {
    AugTree& t = trees_.at(tree_of_[attach_to]);
    t.add_child(attach_to, w);
    t.add_child(w, z);
    m_bits_.reset(w);
    m_bits_.reset(z);
    mate_[w] = mate_[z] = -1;
    vclass_[w] = vclass_[z] = VClass::InAug;
    tree_of_[w] = tree_of_[z] = t.root;
}

Stage1Engine::Step Stage1Engine::do_pending(const Board& board) {
    Pending pl = *pending_;
    // re-validate the planned (x,y) after Breaker's intervening turn
    bool valid = pl.x >= 0 && vclass_[pl.x] == VClass::InM && mate_[pl.x] == pl.y &&
                 !troub(pl.x) && !troub(pl.y) && board.unclaimed(pl.v, pl.x);
    if (!valid) {
        auto x = find_matching_partner(board, pl.v, -1);
        if (!x) {
            return {Step::Kind::Fail, -1, -1, "", kGrowthStarved,
                    "1b second half: no qualifying matching edge for leaf " +
                        std::to_string(pl.v)};
        }
        pl.x = *x;
        pl.y = mate_[*x];
    }
    consume_m_edge(pl.x, pl.y, pl.v);
    pending_.reset();
    ++maker_moves_;
    return {Step::Kind::Claim, pl.v, pl.x, "1b.2", "", ""};
}

Stage1Engine::Step Stage1Engine::do_case2(const Board& board, VertexId v) {
    // Case 2a: extend with a matching edge
    if (auto w = find_matching_partner(board, v, -1)) {
        VertexId z = mate_[*w];
        materialize_tree(v);
        consume_m_edge(*w, z, v);
        ++maker_moves_;
        return {Step::Kind::Claim, v, *w, "2a", "", ""};
    }
    // Case 2b: close into a matchable tree with a nontroublesome singleton
    for (VertexId w : singletons_) {
        if (troub(w) || !board.unclaimed(v, w)) continue;
        AugTree& t = materialize_tree(v);
        MatchableTree mt;
        mt.verts = t.vertices();
        mt.verts.push_back(w);
        std::sort(mt.verts.begin(), mt.verts.end());
        mt.edges = t.edges();
        mt.edges.push_back(make_edge(v, w));
        std::sort(mt.edges.begin(), mt.edges.end());
        mt.matching = leaf_swap_matching(t, v); // covers V(T)-v
        mt.matching.push_back(make_edge(v, w));
        std::sort(mt.matching.begin(), mt.matching.end());
        for (VertexId u : mt.verts) {
            vclass_[u] = VClass::InMatchable;
            tree_of_[u] = -1;
        }
        trees_.erase(t.root);
        singletons_.erase(w);
        singleton_bits_.reset(w);
        matchables_.push_back(std::move(mt));
        ++maker_moves_;
        return {Step::Kind::Claim, v, w, "2b", "", ""};
    }
    return {Step::Kind::Fail, -1, -1, "", kCloseStarved,
            "no nontroublesome singleton reachable from troublesome leaf " + std::to_string(v)};
}

std::optional<Edge> Stage1Engine::case1a_pair(const Board& board) const {
    for (VertexId u : singletons_) {
        Bitset partners = singleton_bits_ & board.unclaimed_row(u);
        size_t w = partners.find_next(u); // lowest-id scan order, w > u
        if (w != Bitset::npos) return Edge{u, static_cast<VertexId>(w)};
    }
    return std::nullopt;
}

std::optional<VertexId> Stage1Engine::pick_growth_tree() const {
    // fewest leaves, then lowest root id; singletons count 1 leaf. Only trees
    // with < ell leaves qualify: the rest are finished.
    VertexId best = -1;
    int best_leaves = 0;
    if (!singletons_.empty() && 1 < params_.ell) {
        best = *singletons_.begin();
        best_leaves = 1;
    }
    for (const auto& [root, t] : trees_) {
        int lc = static_cast<int>(t.leaves().size());
        if (lc >= params_.ell) continue;
        if (best < 0 || lc < best_leaves || (lc == best_leaves && root < best)) {
            best = root;
            best_leaves = lc;
        }
    }
    if (best < 0) return std::nullopt;
    return best;
}

Stage1Engine::Step Stage1Engine::step(const Board& board) {
    process_log(board);
    if (pending_) return do_pending(board);

    if (auto tl = select_troublesome_leaf(board)) return do_case2(board, tl->second);

    if (p() > params_.pairing_stop) {
        if (auto e = case1a_pair(board)) {
            singletons_.erase(e->u);
            singletons_.erase(e->v);
            singleton_bits_.reset(e->u);
            singleton_bits_.reset(e->v);
            vclass_[e->u] = vclass_[e->v] = VClass::InM;
            mate_[e->u] = e->v;
            mate_[e->v] = e->u;
            m_bits_.set(e->u);
            m_bits_.set(e->v);
            ++maker_moves_;
            return {Step::Kind::Claim, e->u, e->v, "1a", "", ""};
        }
    }

    if (auto root = pick_growth_tree()) {
        // lowest-id leaf of the chosen tree
        VertexId v = *root;
        if (vclass_[v] == VClass::InAug) v = trees_.at(*root).leaves().front();
        auto w = find_matching_partner(board, v, -1);
        if (!w) {
            return {Step::Kind::Fail, -1, -1, "", kGrowthStarved,
                    "1b first half: no qualifying matching edge for leaf " + std::to_string(v)};
        }
        VertexId z = mate_[*w];
        // plan the second matching edge now; re-validated after Breaker's reply
        Pending pl{v, -1, -1, -1};
        if (auto x = find_matching_partner(board, v, *w)) {
            pl.x = *x;
            pl.y = mate_[*x];
        }
        materialize_tree(v);
        consume_m_edge(*w, z, v);
        pl.root = tree_of_[v];
        pending_ = pl;
        ++maker_moves_;
        return {Step::Kind::Claim, v, *w, "1b.1", "", ""};
    }

    return complete(board);
}

Stage1Engine::Step Stage1Engine::complete(const Board& board) {
    // Termination (Case 1c). p parity is structural: 1a and 2b subtract 2.
    if (p() % 2 != 0)
        return {Step::Kind::Fail, -1, -1, "", "INVARIANT_VIOLATION",
                "terminated with odd p = " + std::to_string(p())};
    if (p() < params_.p_min || p() > params_.p_max)
        return {Step::Kind::Fail, -1, -1, "", kPairStarved,
                "terminated with p = " + std::to_string(p()) + " outside [" +
                    std::to_string(params_.p_min) + ", " + std::to_string(params_.p_max) + "]"};
    for (const auto& [root, t] : trees_) {
        if (!is_nice(t, board, params_) || !is_small(t, board, params_))
            return {Step::Kind::Fail, -1, -1, "", "INVARIANT_VIOLATION",
                    "tree rooted at " + std::to_string(root) + " not nice/small at termination"};
    }
    return {Step::Kind::Complete, -1, -1, "", "", ""};
}

Stage1Output Stage1Engine::output() const {
    Stage1Output out;
    for (size_t w = m_bits_.find_first(); w != Bitset::npos; w = m_bits_.find_next(w)) {
        VertexId wi = static_cast<VertexId>(w);
        if (wi < mate_[wi]) out.M.push_back({wi, mate_[wi]});
    }
    for (const auto& [root, t] : trees_) out.nice_trees.push_back(t);
    out.matchable_trees = matchables_;
    out.maker_moves = maker_moves_;
    out.p = p();
    out.q = q();
    return out;
}

std::vector<std::vector<VertexId>> Stage1Engine::leaf_sets() const {
    std::vector<std::vector<VertexId>> out;
    for (const auto& [root, t] : trees_) out.push_back(t.leaves());
    return out;
}

ojson Stage1Engine::dump_registry() const {
    auto edge_list = [](const std::vector<Edge>& es) {
        ojson arr = ojson::array();
        for (Edge e : es) arr.push_back(ojson::array({e.u, e.v}));
        return arr;
    };
    ojson trees = ojson::array();
    for (const auto& [root, t] : trees_) {
        ojson nodes = ojson::array();
        for (const auto& [v, node] : t.nodes)
            nodes.push_back(ojson{{"v", v}, {"parent", node.parent}, {"depth", node.depth}});
        trees.push_back(ojson{{"root", root}, {"nodes", nodes}, {"leaves", t.leaves()}});
    }
    ojson matchables = ojson::array();
    for (const auto& mt : matchables_)
        matchables.push_back(ojson{{"verts", mt.verts},
                                   {"edges", edge_list(mt.edges)},
                                   {"matching", edge_list(mt.matching)}});
    Stage1Output out = output();
    return ojson{{"p", p()},
                 {"q", q()},
                 {"M", edge_list(out.M)},
                 {"singletons", std::vector<VertexId>(singletons_.begin(), singletons_.end())},
                 {"nice_trees", trees},
                 {"matchable_trees", matchables}};
}

} // namespace pmg
