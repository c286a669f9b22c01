#include "pmgame/audit.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <set>

#include "pmgame/assembly.hpp"
#include "pmgame/board.hpp"
#include "pmgame/forest.hpp"

namespace pmg {

namespace {

const char* const kInvariantNames[] = {
    "board.claim_permanence",  "board.turn_discipline",   "board.degree_consistency",
    "stage1.registry_partition", "stage1.case_priority",  "stage1.pairing_guard",
    "stage1.augmenting_shape", "stage1.leaf_monotonicity", "stage1.matchable_verified",
    "stage1.termination",      "stage1.smallness_final",  "stage2.phase1_argmax",
    "stage2.mult_conservation", "stage2.degree_monitor",  "stage2.phase2_witness",
    "stage2.phase2_progress",  "stage2.budget",           "assembly.final_matching",
    "assembly.reassembly",
};

std::vector<Edge> edges_from(const ojson& arr) {
    std::vector<Edge> out;
    for (const auto& e : arr) out.push_back(make_edge(e.at(0).get<int>(), e.at(1).get<int>()));
    return out;
}

AugTree tree_from(const ojson& j) {
    AugTree t;
    t.root = j.at("root").get<int>();
    for (const auto& nd : j.at("nodes")) {
        AugTree::Node node;
        node.parent = nd.at("parent").get<int>();
        node.depth = nd.at("depth").get<int>();
        t.nodes[nd.at("v").get<int>()] = node;
    }
    for (auto& [v, node] : t.nodes)
        if (node.parent >= 0) t.nodes.at(node.parent).children.push_back(v);
    return t;
}

class Auditor {
  public:
    explicit Auditor(const Transcript& t) : t_(t) {
        for (const char* name : kInvariantNames) {
            index_[name] = results_.size();
            results_.push_back(InvariantResult{name, true, -1, 0, ""});
        }
    }

    AuditReport run();

  private:
    InvariantResult& inv(const std::string& name) { return results_[index_.at(name)]; }
    // One exercise of an invariant; records the first violation.
    void check(const std::string& name, bool ok, long turn, const std::string& detail) {
        InvariantResult& r = inv(name);
        ++r.checks;
        if (!ok && r.pass) {
            r.pass = false;
            r.first_violation_turn = turn;
            r.detail = detail;
        }
    }

    void on_claim(const ojson& rec);
    void on_mark(const ojson& rec);
    void stage1_claim(long turn, VertexId u, VertexId v, const std::string& tag);
    void stage2_claim(long turn, VertexId u, VertexId v, const std::string& tag);
    void partition_sweep(long turn);
    void stage1_end(long turn);
    void recount_mult(long turn);
    void finish();

    bool is_shadow_leaf(VertexId v) const {
        if (vclass_[v] == VC::Singleton) return true;
        if (vclass_[v] != VC::InAug) return false;
        return trees_.at(tree_of_[v]).nodes.at(v).children.empty();
    }
    std::vector<VertexId> troublesome_leaves() const {
        std::vector<VertexId> out;
        for (VertexId v : troublesome_)
            if (is_shadow_leaf(v)) out.push_back(v);
        return out;
    }
    int shadow_p() const { return static_cast<int>(singletons_.size() + trees_.size()); }

    const Transcript& t_;
    std::map<std::string, size_t> index_;
    std::vector<InvariantResult> results_;

    Params params_;
    int n_ = 0, b_ = 0;
    std::unique_ptr<Board> board_;
    long claims_seen_ = 0;
    long last_turn_ = 0;

    // turn discipline
    long breaker_run_ = 0;
    long expected_block_ = -1;
    bool saw_fault_ = false;
    void maker_turn_boundary(long turn) {
        if (b_ > 0) {
            check("board.turn_discipline",
                  expected_block_ >= 0 && breaker_run_ == expected_block_, turn,
                  "breaker block of " + std::to_string(breaker_run_) + ", expected " +
                      std::to_string(expected_block_));
        }
        breaker_run_ = 0;
        expected_block_ = -1;
    }

    // stage-1 shadow registry
    enum class VC : uint8_t { Singleton, InM, InAug, InMatchable };
    std::vector<VC> vclass_;
    std::vector<VertexId> mate_, tree_of_;
    std::vector<int> matchable_of_;
    std::set<VertexId> singletons_;
    std::map<VertexId, AugTree> trees_;
    std::vector<MatchableTree> matchables_;
    std::set<VertexId> troublesome_;
    std::vector<Edge> s1_edges_; // every stage-1 Maker claim
    bool pending_ = false;
    VertexId pending_leaf_ = -1;
    size_t pending_prev_leaves_ = 0;
    bool stage1_ended_ = false;

    // stage-2 shadow
    bool stage2_ = false;
    int aux_p_ = 0;
    std::vector<std::vector<VertexId>> leaf_sets_;
    std::vector<int> leaf_owner_;
    std::vector<std::vector<int>> mult_;
    std::vector<int> dB_aux_, out_deg_;
    std::vector<std::vector<char>> maker_aux_;
    std::vector<char> monitor_counted_;
    long monitor_recount_ = 0;
    long s2_claims_ = 0;
    bool p2_seen_ = false;
    bool have_witness_ = false;
    std::vector<int> witness_;
    long last_witness_len_ = 0;

    ojson snapshot_;
};

void Auditor::on_claim(const ojson& rec) {
    const long turn = rec.value("turn", -1L);
    last_turn_ = turn;
    const std::string player = rec.value("player", "");
    const VertexId u = rec.value("u", -1);
    const VertexId v = rec.value("v", -1);
    const int stage = rec.value("stage", 0);
    const std::string tag = rec.value("case", "");

    const bool legal =
        u >= 0 && v >= 0 && u < n_ && v < n_ && u != v && board_->unclaimed(u, v);
    check("board.claim_permanence", legal, turn,
          "claim (" + std::to_string(u) + "," + std::to_string(v) + ") by " + player +
              " is out of range or already claimed");

    if (player == "B") {
        if (breaker_run_ == 0) expected_block_ = std::min<long>(b_, board_->remaining());
        ++breaker_run_;
        check("board.turn_discipline", breaker_run_ <= expected_block_, turn,
              "breaker exceeded block of " + std::to_string(expected_block_));
        if (legal) board_->claim(make_edge(u, v), Owner::Breaker);
        if (legal) {
            for (VertexId x : {u, v})
                if (board_->dB(x) > params_.troublesome_threshold) troublesome_.insert(x);
            if (stage2_) {
                int i = leaf_owner_[u], j = leaf_owner_[v];
                if (i >= 0 && j >= 0 && i != j) {
                    if (mult_[i][j] > 0) {
                        --mult_[i][j];
                        --mult_[j][i];
                    }
                    ++dB_aux_[i];
                    ++dB_aux_[j];
                    for (int x : {i, j}) {
                        if (out_deg_[x] < params_.stage2_outdeg && !monitor_counted_[x] &&
                            dB_aux_[x] >= 3.0 * n_) {
                            ++monitor_recount_;
                            monitor_counted_[x] = 1;
                        }
                    }
                }
                recount_mult(turn);
            }
        }
    } else {
        maker_turn_boundary(turn);
        if (legal) board_->claim(make_edge(u, v), Owner::Maker);
        if (legal && stage == 1) stage1_claim(turn, u, v, tag);
        if (legal && stage == 2) stage2_claim(turn, u, v, tag);
    }

    if (++claims_seen_ % 256 == 0)
        check("board.degree_consistency", board_->degrees_consistent(), turn,
              "degree counters diverge from claim rows");
}

void Auditor::stage1_claim(long turn, VertexId u, VertexId v, const std::string& tag) {
    s1_edges_.push_back(make_edge(u, v));
    check("stage1.registry_partition", !stage1_ended_, turn, "stage-1 claim after end mark");

    auto troub = [&](VertexId x) { return troublesome_.count(x) > 0; };
    auto tl = troublesome_leaves();
    VertexId argmax = -1;
    int best = -1;
    for (VertexId x : tl)
        if (board_->dB(x) > best) {
            argmax = x;
            best = board_->dB(x);
        }

    // Case priority: a committed 1b finishes first; otherwise troublesome
    // leaves force Case 2 at the argmax leaf; Case 1a only under the guard.
    if (pending_) {
        check("stage1.case_priority", tag == "1b.2" && u == pending_leaf_, turn,
              "committed growth at " + std::to_string(pending_leaf_) + " but saw " + tag +
                  " at " + std::to_string(u));
    } else if (tag == "1a" || tag == "1b.1") {
        check("stage1.case_priority", tl.empty(), turn,
              "Case-1 claim while troublesome leaf " +
                  std::to_string(tl.empty() ? -1 : argmax) + " existed");
    } else if (tag == "2a" || tag == "2b") {
        check("stage1.case_priority", u == argmax, turn,
              "Case-2 at " + std::to_string(u) + ", argmax troublesome leaf is " +
                  std::to_string(argmax));
    }

    auto attach_m_edge = [&](VertexId leaf, VertexId w) -> bool {
        if (vclass_[w] != VC::InM) return false;
        VertexId z = mate_[w];
        check("stage1.case_priority", !troub(w) && !troub(z), turn,
              "growth consumed troublesome M-edge (" + std::to_string(w) + "," +
                  std::to_string(z) + ")");
        if (vclass_[leaf] == VC::Singleton) {
            singletons_.erase(leaf);
            vclass_[leaf] = VC::InAug;
            tree_of_[leaf] = leaf;
            trees_.emplace(leaf, AugTree::singleton(leaf));
        }
        AugTree& tr = trees_.at(tree_of_[leaf]);
        tr.add_child(leaf, w);
        tr.add_child(w, z);
        vclass_[w] = vclass_[z] = VC::InAug;
        tree_of_[w] = tree_of_[z] = tr.root;
        mate_[w] = mate_[z] = -1;
        return true;
    };

    bool applied = false;
    if (tag == "1a") {
        check("stage1.pairing_guard", shadow_p() > params_.pairing_stop, turn,
              "1a with p = " + std::to_string(shadow_p()) + " <= pairing_stop");
        bool ok = vclass_[u] == VC::Singleton && vclass_[v] == VC::Singleton;
        check("stage1.registry_partition", ok, turn, "1a endpoints are not both singletons");
        if (ok) {
            singletons_.erase(u);
            singletons_.erase(v);
            vclass_[u] = vclass_[v] = VC::InM;
            mate_[u] = v;
            mate_[v] = u;
            applied = true;
        }
    } else if (tag == "1b.1" || tag == "2a") {
        bool leaf_ok = is_shadow_leaf(u);
        check("stage1.registry_partition", leaf_ok && vclass_[v] == VC::InM, turn,
              tag + " must join a leaf to an M-vertex");
        size_t before =
            !leaf_ok ? 0
                     : (vclass_[u] == VC::Singleton ? 1 : trees_.at(tree_of_[u]).leaves().size());
        if (tag == "1b.1" && leaf_ok) {
            check("stage1.case_priority", static_cast<int>(before) < params_.ell, turn,
                  "growth on a tree that already has " + std::to_string(before) + " leaves");
            pending_ = true;
            pending_leaf_ = u;
            pending_prev_leaves_ = before;
        }
        if (leaf_ok && vclass_[v] == VC::InM) applied = attach_m_edge(u, v);
        if (applied && tag == "2a") {
            // v's mate replaces u as a leaf: the count never grows under Case 2
            size_t after = trees_.at(tree_of_[u]).leaves().size();
            check("stage1.leaf_monotonicity", after == before, turn,
                  "2a moved leaf count from " + std::to_string(before) + " to " +
                      std::to_string(after));
        }
    } else if (tag == "1b.2") {
        bool ok = pending_ && u == pending_leaf_ && vclass_[v] == VC::InM;
        check("stage1.registry_partition", ok, turn, "1b.2 without a matching 1b.1");
        if (ok) {
            applied = attach_m_edge(u, v);
            size_t after = trees_.at(tree_of_[u]).leaves().size();
            check("stage1.leaf_monotonicity", after == pending_prev_leaves_ + 1, turn,
                  "1b left " + std::to_string(after) + " leaves, expected " +
                      std::to_string(pending_prev_leaves_ + 1));
        }
        pending_ = false;
    } else if (tag == "2b") {
        bool ok = is_shadow_leaf(u) && vclass_[v] == VC::Singleton && !troub(v);
        check("stage1.registry_partition", ok, turn,
              "2b must join a troublesome leaf to a nontroublesome singleton");
        if (ok) {
            // u's tree plus v becomes a matchable component
            if (vclass_[u] == VC::Singleton) {
                singletons_.erase(u);
                vclass_[u] = VC::InAug;
                tree_of_[u] = u;
                trees_.emplace(u, AugTree::singleton(u));
            }
            AugTree tr = trees_.at(tree_of_[u]);
            MatchableTree mt;
            mt.verts = tr.vertices();
            mt.verts.push_back(v);
            std::sort(mt.verts.begin(), mt.verts.end());
            mt.edges = tr.edges();
            mt.edges.push_back(make_edge(u, v));
            std::sort(mt.edges.begin(), mt.edges.end());
            auto pm = tree_perfect_matching(mt.verts, mt.edges);
            check("stage1.matchable_verified",
                  pm.has_value() && mt.verts.size() % 2 == 0, turn,
                  "2b component has no perfect matching");
            if (pm) mt.matching = *pm;
            trees_.erase(tr.root);
            singletons_.erase(v);
            int idx = static_cast<int>(matchables_.size());
            for (VertexId x : mt.verts) {
                vclass_[x] = VC::InMatchable;
                tree_of_[x] = -1;
                mate_[x] = -1;
                matchable_of_[x] = idx;
            }
            matchables_.push_back(std::move(mt));
            applied = true;
        }
    } else {
        check("stage1.registry_partition", false, turn, "unknown stage-1 tag '" + tag + "'");
    }

    if (applied && vclass_[u] == VC::InAug) {
        const AugTree& tr = trees_.at(tree_of_[u]);
        bool shape = is_augmenting(tr);
        for (const auto& [x, node] : tr.nodes)
            if (tr.degree(x) > 3) shape = false;
        check("stage1.augmenting_shape", shape, turn,
              "tree rooted at " + std::to_string(tr.root) + " lost the augmenting shape");
    }
    partition_sweep(turn);
}

void Auditor::partition_sweep(long turn) {
    std::string why;
    long in_m = 0, in_aug = 0;
    for (VertexId x = 0; x < n_ && why.empty(); ++x) {
        switch (vclass_[x]) {
        case VC::Singleton:
            if (!singletons_.count(x)) why = "singleton " + std::to_string(x) + " not in set";
            break;
        case VC::InM: {
            ++in_m;
            VertexId w = mate_[x];
            if (w < 0 || mate_[w] != x)
                why = "asymmetric mate at " + std::to_string(x);
            else if (board_->state(make_edge(x, w)) != Owner::Maker)
                why = "M-edge (" + std::to_string(x) + "," + std::to_string(w) + ") not Maker's";
            break;
        }
        case VC::InAug: {
            ++in_aug;
            auto it = trees_.find(tree_of_[x]);
            if (it == trees_.end() || !it->second.contains(x))
                why = "vertex " + std::to_string(x) + " missing from its tree";
            break;
        }
        case VC::InMatchable:
            if (matchable_of_[x] < 0 ||
                matchable_of_[x] >= static_cast<int>(matchables_.size()))
                why = "vertex " + std::to_string(x) + " has no matchable component";
            break;
        }
    }
    long tree_verts = 0;
    for (const auto& [root, tr] : trees_) tree_verts += tr.size();
    if (why.empty() && tree_verts != in_aug) why = "tree vertex count diverges";
    long matchable_verts = 0;
    for (const auto& mt : matchables_) matchable_verts += static_cast<long>(mt.verts.size());
    if (why.empty() &&
        static_cast<long>(singletons_.size()) + in_m + in_aug + matchable_verts != n_)
        why = "families do not partition the vertex set";
    // every stage-1 Maker edge lives in exactly one container
    for (size_t k = 0; k < s1_edges_.size() && why.empty(); ++k) {
        Edge e = s1_edges_[k];
        int owners = 0;
        if (vclass_[e.u] == VC::InM && mate_[e.u] == e.v) ++owners;
        if (vclass_[e.u] == VC::InAug && tree_of_[e.u] == tree_of_[e.v]) {
            const AugTree& tr = trees_.at(tree_of_[e.u]);
            if (tr.nodes.at(e.u).parent == e.v || tr.nodes.at(e.v).parent == e.u) ++owners;
        }
        if (vclass_[e.u] == VC::InMatchable && matchable_of_[e.u] >= 0 &&
            matchable_of_[e.u] == matchable_of_[e.v])
            ++owners;
        if (owners != 1)
            why = "Maker edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") has " +
                  std::to_string(owners) + " containers";
    }
    check("stage1.registry_partition", why.empty(), turn, why);
}

void Auditor::stage1_end(long turn) {
    stage1_ended_ = true;
    std::string why;
    int p = shadow_p();
    if (!singletons_.empty())
        why = std::to_string(singletons_.size()) + " singletons left at end";
    else if (p % 2 != 0)
        why = "odd p = " + std::to_string(p);
    else if (p < params_.p_min || p > params_.p_max)
        why = "p = " + std::to_string(p) + " outside configured bounds";
    else {
        for (const auto& [root, tr] : trees_) {
            if (!is_nice(tr, *board_, params_)) {
                why = "tree rooted at " + std::to_string(root) + " is not nice";
                break;
            }
        }
    }
    check("stage1.termination", why.empty(), turn, why);
    if (pending_) check("stage1.case_priority", false, turn, "end mark with growth pending");

    // Build the stage-2 shadow from the reconstructed trees.
    stage2_ = true;
    aux_p_ = static_cast<int>(trees_.size());
    leaf_owner_.assign(n_, -1);
    for (const auto& [root, tr] : trees_) {
        auto lv = tr.leaves();
        for (VertexId x : lv) leaf_owner_[x] = static_cast<int>(leaf_sets_.size());
        leaf_sets_.push_back(std::move(lv));
    }
    mult_.assign(aux_p_, std::vector<int>(aux_p_, 0));
    for (int i = 0; i < aux_p_; ++i)
        for (int j = i + 1; j < aux_p_; ++j) {
            int c = 0;
            for (VertexId a : leaf_sets_[i])
                for (VertexId b : leaf_sets_[j]) c += board_->unclaimed(a, b) ? 1 : 0;
            mult_[i][j] = mult_[j][i] = c;
        }
    dB_aux_.assign(aux_p_, 0);
    out_deg_.assign(aux_p_, 0);
    maker_aux_.assign(aux_p_, std::vector<char>(aux_p_, 0));
    monitor_counted_.assign(aux_p_, 0);
}

void Auditor::recount_mult(long turn) {
    // the incremental copy must track the board's fresh count exactly
    for (int i = 0; i < aux_p_; ++i)
        for (int j = i + 1; j < aux_p_; ++j) {
            int c = 0;
            for (VertexId a : leaf_sets_[i])
                for (VertexId b : leaf_sets_[j]) c += board_->unclaimed(a, b) ? 1 : 0;
            if (c != mult_[i][j]) {
                check("stage2.mult_conservation", false, turn,
                      "mult(" + std::to_string(i) + "," + std::to_string(j) + ") = " +
                          std::to_string(mult_[i][j]) + ", fresh count " + std::to_string(c));
                mult_[i][j] = mult_[j][i] = c;
                return;
            }
        }
    check("stage2.mult_conservation", true, turn, "");
}

void Auditor::stage2_claim(long turn, VertexId u, VertexId v, const std::string& tag) {
    if (!stage2_) {
        check("stage2.phase1_argmax", false, turn, "stage-2 claim before the end mark");
        return;
    }
    ++s2_claims_;
    check("stage2.budget",
          s2_claims_ <= static_cast<long>(params_.stage2_budget_factor) * aux_p_, turn,
          "stage-2 claim " + std::to_string(s2_claims_) + " exceeds budget");

    int i = leaf_owner_[u], j = leaf_owner_[v];
    bool between = i >= 0 && j >= 0 && i != j;
    check("stage2.phase1_argmax", between || tag != "p1", turn,
          "p1 claim not between two distinct leaf sets");
    if (between) {
        if (mult_[std::min(i, j)][std::max(i, j)] > 0) {
            --mult_[i][j];
            --mult_[j][i];
        }
        maker_aux_[i][j] = maker_aux_[j][i] = 1;
    }

    if (tag == "p1") {
        check("stage2.phase1_argmax", !p2_seen_, turn, "p1 claim after phase 2 began");
        if (between) {
            // orientation: u is the chosen vertex's leaf
            int chosen = i;
            std::string why;
            if (out_deg_[chosen] >= params_.stage2_outdeg)
                why = "chosen vertex already at the outdegree target";
            double d = static_cast<double>(dB_aux_[chosen]) - 2.0 * b_ * out_deg_[chosen];
            for (int x = 0; x < aux_p_ && why.empty(); ++x) {
                if (x == chosen || out_deg_[x] >= params_.stage2_outdeg) continue;
                double dx = static_cast<double>(dB_aux_[x]) - 2.0 * b_ * out_deg_[x];
                if (dx > d || (dx == d && x < chosen))
                    why = "vertex " + std::to_string(x) + " has priority over " +
                          std::to_string(chosen);
            }
            check("stage2.phase1_argmax", why.empty(), turn, why);
            ++out_deg_[chosen];
        }
    } else if (tag == "p2") {
        p2_seen_ = true;
        if (have_witness_) {
            bool ends = between && ((witness_.front() == i && witness_.back() == j) ||
                                    (witness_.front() == j && witness_.back() == i));
            check("stage2.phase2_witness", ends, turn,
                  "claim does not join the witness path's endpoints");
            check("stage2.phase2_progress",
                  static_cast<long>(witness_.size()) >= last_witness_len_, turn,
                  "witness path shrank from " + std::to_string(last_witness_len_) + " to " +
                      std::to_string(witness_.size()));
            last_witness_len_ = static_cast<long>(witness_.size());
            have_witness_ = false;
        } else {
            check("stage2.phase2_witness", false, turn, "p2 claim without a p2_info mark");
        }
    }
    recount_mult(turn);
}

void Auditor::on_mark(const ojson& rec) {
    const long turn = rec.value("turn", -1L);
    const std::string tag = rec.value("tag", "");
    const ojson data = rec.value("data", ojson());
    if (tag == "end") {
        stage1_end(turn); // boundary fires on the claim that follows
    } else if (tag == "p2_info") {
        witness_.clear();
        if (data.contains("path"))
            for (const auto& x : data.at("path")) witness_.push_back(x.get<int>());
        std::string why;
        std::set<int> seen;
        for (int x : witness_) {
            if (x < 0 || x >= aux_p_) why = "witness vertex out of range";
            else if (!seen.insert(x).second) why = "witness repeats vertex " + std::to_string(x);
        }
        if (why.empty() && witness_.size() < 2) why = "witness shorter than one edge";
        for (size_t k = 0; why.empty() && k + 1 < witness_.size(); ++k)
            if (!maker_aux_[witness_[k]][witness_[k + 1]])
                why = "witness edge (" + std::to_string(witness_[k]) + "," +
                      std::to_string(witness_[k + 1]) + ") is not Maker's";
        check("stage2.phase2_witness", why.empty(), turn, why);
        have_witness_ = why.empty();
    } else if (tag == "pass") {
        maker_turn_boundary(turn);
    } else if (tag == "faulty") {
        saw_fault_ = true;
    } else if (tag.rfind("concede:", 0) == 0) {
        snapshot_ = ojson{{"turn", turn}, {"code", tag.substr(8)}, {"data", data}};
    }
    // win marks carry no obligations here; the footer checks cover them
}

void Auditor::finish() {
    if (breaker_run_ > 0 && !saw_fault_) {
        check("board.turn_discipline", breaker_run_ == expected_block_, last_turn_,
              "trailing breaker block of " + std::to_string(breaker_run_) + ", expected " +
                  std::to_string(expected_block_));
    }
    check("board.degree_consistency", board_->degrees_consistent(), last_turn_,
          "degree counters diverge from claim rows");

    if (stage1_ended_) {
        for (const auto& [root, tr] : trees_)
            check("stage1.smallness_final", is_small(tr, *board_, params_), last_turn_,
                  "tree rooted at " + std::to_string(root) + " is not small on the final board");
    }

    const ojson& f = t_.footer;
    if (f.is_null()) return;

    if (stage2_ && f.contains("monitor_events")) {
        long reported = f.value("monitor_events", 0L);
        check("stage2.degree_monitor", reported == monitor_recount_, last_turn_,
              "footer reports " + std::to_string(reported) + " monitor events, recount " +
                  std::to_string(monitor_recount_));
    }

    const std::string outcome = f.value("outcome", "");
    if (outcome == "win") {
        std::string why;
        std::vector<Edge> fm;
        if (!f.contains("final_matching")) {
            why = "winning footer lacks final_matching";
        } else {
            fm = edges_from(f.at("final_matching"));
            auto rep = verify_perfect_matching(*board_, fm);
            if (!rep.ok) why = rep.violations.front();
            else if (static_cast<int>(fm.size()) != n_ / 2)
                why = "matching has " + std::to_string(fm.size()) + " edges, expected n/2";
        }
        check("assembly.final_matching", why.empty(), last_turn_, why);

        // Recompose from the footer's own pieces and compare.
        std::string rwhy;
        try {
            std::vector<Edge> M = edges_from(f.at("M"));
            std::vector<Edge> N = edges_from(f.at("N"));
            std::vector<AugTree> nice;
            for (const auto& tj : f.at("nice_trees")) nice.push_back(tree_from(tj));
            std::vector<MatchableTree> mts;
            for (const auto& mj : f.at("matchable_trees")) {
                MatchableTree mt;
                for (const auto& x : mj.at("verts")) mt.verts.push_back(x.get<int>());
                mt.edges = edges_from(mj.at("edges"));
                mt.matching = edges_from(mj.at("matching"));
                mts.push_back(std::move(mt));
            }
            // footer trees must agree with the shadow reconstruction
            if (nice.size() != trees_.size()) {
                rwhy = "footer lists " + std::to_string(nice.size()) + " nice trees, shadow has " +
                       std::to_string(trees_.size());
            } else {
                for (const auto& tj : nice) {
                    auto it = trees_.find(tj.root);
                    if (it == trees_.end() || it->second.nodes.size() != tj.nodes.size()) {
                        rwhy = "footer tree at root " + std::to_string(tj.root) +
                               " diverges from the replay";
                        break;
                    }
                    for (const auto& [x, node] : tj.nodes)
                        if (!it->second.contains(x) || it->second.nodes.at(x).parent != node.parent) {
                            rwhy = "footer tree node " + std::to_string(x) + " diverges";
                            break;
                        }
                    if (!rwhy.empty()) break;
                }
            }
            if (rwhy.empty()) {
                auto rebuilt = assemble_perfect_matching(M, nice, mts, N, n_);
                std::vector<Edge> sorted_fm = fm;
                std::sort(sorted_fm.begin(), sorted_fm.end());
                if (rebuilt != sorted_fm) rwhy = "reassembled matching differs from the footer's";
            }
        } catch (const std::exception& e) {
            rwhy = e.what();
        }
        check("assembly.reassembly", rwhy.empty(), last_turn_, rwhy);
    }
}

AuditReport Auditor::run() {
    AuditReport rep;
    n_ = t_.header.value("n", 0);
    b_ = t_.header.value("b", 0);
    params_ = params_from_json(t_.header.at("params"));
    board_ = std::make_unique<Board>(new_board(n_, b_));
    vclass_.assign(n_, VC::Singleton);
    mate_.assign(n_, -1);
    tree_of_.assign(n_, -1);
    matchable_of_.assign(n_, -1);
    for (VertexId x = 0; x < n_; ++x) singletons_.insert(x);

    for (const auto& rec : t_.body) {
        const std::string type = rec.value("type", "");
        if (type == "claim") on_claim(rec);
        else if (type == "mark") on_mark(rec);
    }
    finish();

    rep.invariants = results_;
    rep.ok = std::all_of(results_.begin(), results_.end(),
                         [](const InvariantResult& r) { return r.pass; });
    if (!t_.footer.is_null()) {
        rep.outcome = t_.footer.value("outcome", "");
        if (rep.outcome.rfind("concede:", 0) == 0) rep.failure_code = rep.outcome.substr(8);
    }
    if (!snapshot_.is_null()) {
        if (!t_.footer.is_null()) {
            snapshot_["p"] = t_.footer.value("p", 0);
            snapshot_["q"] = t_.footer.value("q", 0);
        }
        rep.snapshot = snapshot_;
    }
    return rep;
}

} // namespace

ojson AuditReport::to_json() const {
    ojson inv = ojson::array();
    for (const auto& r : invariants)
        inv.push_back(ojson{{"name", r.name},
                            {"pass", r.pass},
                            {"first_violation_turn", r.first_violation_turn},
                            {"checks", r.checks},
                            {"detail", r.detail}});
    ojson j{{"ok", ok}, {"outcome", outcome}, {"failure_code", failure_code}, {"invariants", inv}};
    if (!snapshot.is_null()) j["snapshot"] = snapshot;
    return j;
}

AuditReport audit_transcript(const Transcript& t) { return Auditor(t).run(); }

} // namespace pmg
