#include "pmgame/breakers.hpp"

#include <algorithm>
#include <set>

namespace pmg {

namespace {

// All unclaimed edges in canonical ascending order.
std::vector<Edge> all_unclaimed(const Board& b) {
    std::vector<Edge> out;
    out.reserve(b.remaining());
    for (int u = 0; u < b.n(); ++u) {
        Bitset row = b.unclaimed_row(u);
        for (size_t v = row.find_next(u); v != Bitset::npos; v = row.find_next(v))
            out.push_back(Edge{u, static_cast<int>(v)});
    }
    return out;
}

// Deterministic budget filler: lowest unclaimed edges not already picked.
void fill_ascending(const Board& b, int budget, std::vector<Edge>& picked, std::set<Edge>& taken) {
    for (int u = 0; u < b.n() && static_cast<int>(picked.size()) < budget; ++u) {
        Bitset row = b.unclaimed_row(u);
        for (size_t v = row.find_next(u);
             v != Bitset::npos && static_cast<int>(picked.size()) < budget; v = row.find_next(v)) {
            Edge e{u, static_cast<int>(v)};
            if (taken.insert(e).second) picked.push_back(e);
        }
    }
}

} // namespace

std::vector<Edge> RandomBreaker::move(const Board& board, int budget, Rng& rng,
                                      const PublicInfo&) {
    std::vector<Edge> picked;
    std::set<Edge> taken;
    if (board.remaining() <= static_cast<long>(budget) * 4) {
        // dense endgame: enumerate and partial-Fisher-Yates
        std::vector<Edge> pool = all_unclaimed(board);
        for (int i = 0; i < budget && !pool.empty(); ++i) {
            size_t j = rng.below(pool.size());
            picked.push_back(pool[j]);
            pool[j] = pool.back();
            pool.pop_back();
        }
        return picked;
    }
    while (static_cast<int>(picked.size()) < budget) {
        int u = rng.below_int(board.n());
        int v = rng.below_int(board.n());
        if (u == v) continue;
        Edge e = make_edge(u, v);
        if (!board.unclaimed(e.u, e.v) || taken.count(e)) continue;
        taken.insert(e);
        picked.push_back(e);
    }
    return picked;
}

std::vector<Edge> IsolatorBreaker::move(const Board& board, int budget, Rng&,
                                        const PublicInfo&) {
    std::vector<Edge> picked;
    std::set<Edge> taken;
    std::vector<int> taken_at(board.n(), 0);
    while (static_cast<int>(picked.size()) < budget) {
        // retarget every pass: cheapest-to-isolate Maker-untouched vertex with
        // at least one unclaimed edge left
        int target = -1;
        long best = -1;
        for (int v = 0; v < board.n(); ++v) {
            if (board.dM(v) != 0) continue;
            long options = static_cast<long>(board.unclaimed_row(v).count()) - taken_at[v];
            if (options <= 0) continue;
            if (best < 0 || options < best) {
                best = options;
                target = v;
            }
        }
        if (target < 0) break;
        Bitset row = board.unclaimed_row(target);
        for (size_t w = row.find_first();
             w != Bitset::npos && static_cast<int>(picked.size()) < budget; w = row.find_next(w)) {
            Edge e = make_edge(target, static_cast<int>(w));
            if (taken.insert(e).second) {
                picked.push_back(e);
                ++taken_at[e.u];
                ++taken_at[e.v];
            }
        }
    }
    fill_ascending(board, budget, picked, taken);
    return picked;
}

std::vector<Edge> MaxDegreeBreaker::move(const Board& board, int budget, Rng&,
                                         const PublicInfo&) {
    std::vector<int> order(board.n());
    for (int v = 0; v < board.n(); ++v) order[v] = v;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return board.dM(a) > board.dM(b); });
    std::vector<Edge> picked;
    std::set<Edge> taken;
    for (int v : order) {
        if (static_cast<int>(picked.size()) >= budget) break;
        Bitset row = board.unclaimed_row(v);
        for (size_t w = row.find_first();
             w != Bitset::npos && static_cast<int>(picked.size()) < budget; w = row.find_next(w)) {
            Edge e = make_edge(v, static_cast<int>(w));
            if (taken.insert(e).second) picked.push_back(e);
        }
    }
    return picked;
}

std::vector<Edge> LeafCutterBreaker::move(const Board& board, int budget, Rng& rng,
                                          const PublicInfo& info) {
    if (!info.leaf_sets) return RandomBreaker{}.move(board, budget, rng, info);
    const auto& sets = *info.leaf_sets;
    std::vector<Edge> picked;
    std::set<Edge> taken;
    for (size_t i = 0; i < sets.size() && static_cast<int>(picked.size()) < budget; ++i) {
        for (size_t j = i + 1; j < sets.size() && static_cast<int>(picked.size()) < budget; ++j) {
            for (Edge e : board.unclaimed_between(sets[i], sets[j])) {
                if (static_cast<int>(picked.size()) >= budget) break;
                if (taken.insert(e).second) picked.push_back(e);
            }
        }
    }
    // leftover budget: keep pressure on the rest of the board
    if (static_cast<int>(picked.size()) < budget) {
        auto extra = RandomBreaker{}.move(board, budget, rng, info);
        for (Edge e : extra) {
            if (static_cast<int>(picked.size()) >= budget) break;
            if (taken.insert(e).second) picked.push_back(e);
        }
        fill_ascending(board, budget, picked, taken);
    }
    return picked;
}

ScriptedBreaker::ScriptedBreaker(const Transcript& source) {
    // every Maker claim closes one Breaker round (possibly empty, b = 0 games)
    std::vector<Edge> current;
    for (const auto& rec : source.body) {
        if (rec.value("type", "") != "claim") continue;
        if (rec.value("player", "") == "B") {
            current.push_back(make_edge(rec.at("u").get<int>(), rec.at("v").get<int>()));
        } else {
            rounds_.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) rounds_.push_back(std::move(current));
}

std::vector<Edge> ScriptedBreaker::move(const Board& board, int budget, Rng&,
                                        const PublicInfo&) {
    std::vector<Edge> picked;
    std::set<Edge> taken;
    if (next_ < rounds_.size()) {
        for (Edge e : rounds_[next_]) {
            if (static_cast<int>(picked.size()) >= budget) break;
            if (board.unclaimed(e.u, e.v) && taken.insert(e).second) picked.push_back(e);
        }
        ++next_;
    }
    fill_ascending(board, budget, picked, taken);
    return picked;
}

std::vector<Edge> NullBreaker::move(const Board&, int budget, Rng&, const PublicInfo&) {
    if (budget != 0)
        throw std::logic_error("null breaker requires a b=0 board");
    return {};
}

std::unique_ptr<BreakerStrategy> make_breaker(const std::string& name) {
    if (name == "random") return std::make_unique<RandomBreaker>();
    if (name == "isolator") return std::make_unique<IsolatorBreaker>();
    if (name == "max_degree") return std::make_unique<MaxDegreeBreaker>();
    if (name == "leaf_cutter") return std::make_unique<LeafCutterBreaker>();
    if (name == "null") return std::make_unique<NullBreaker>();
    if (name.rfind("scripted:", 0) == 0)
        return std::make_unique<ScriptedBreaker>(Transcript::load(name.substr(9)));
    throw std::invalid_argument("unknown breaker '" + name +
                                "' (random|isolator|max_degree|leaf_cutter|null|scripted:<file>)");
}

} // namespace pmg
