#include "pmgame/game.hpp"

#include <set>

#include "pmgame/assembly.hpp"
#include "pmgame/version.hpp"

namespace pmg {

namespace {

std::vector<Edge> edges_from_json(const ojson& arr) {
    std::vector<Edge> out;
    for (const auto& e : arr) out.push_back(make_edge(e.at(0).get<int>(), e.at(1).get<int>()));
    return out;
}

} // namespace

GameResult run_game(Board& board, MakerStrategy& maker, BreakerStrategy& breaker,
                    uint64_t seed, const Params& params) {
    GameResult res;
    res.transcript.header =
        header_record(kVersion, board.n(), board.b(), seed, maker.name(), breaker.name(), params);

    Rng maker_rng(derive_seed(seed, 1));
    Rng breaker_rng(derive_seed(seed, 2));

    long turn = 0; // global claim index; Breaker's first claim is index 0
    ojson stop_data = ojson::object();
    bool stopped = false;

    auto fault = [&](const std::string& why) {
        res.outcome = Outcome::Faulty;
        res.failure_code.clear();
        res.transcript.body.push_back(mark_record(turn, 0, "faulty", ojson{{"reason", why}}));
        stopped = true;
    };

    while (!stopped) {
        // ---- Breaker turn: exactly min(b, remaining) claims
        int budget = static_cast<int>(std::min<long>(board.b(), board.remaining()));
        if (budget > 0) {
            std::vector<Edge> edges;
            try {
                edges = breaker.move(board, budget, breaker_rng, maker.public_info());
            } catch (const std::exception& e) {
                fault(std::string("breaker threw: ") + e.what());
                break;
            }
            if (static_cast<int>(edges.size()) != budget) {
                fault("breaker returned " + std::to_string(edges.size()) + " edges, budget " +
                      std::to_string(budget));
                break;
            }
            std::set<Edge> seen;
            bool bad = false;
            for (Edge e : edges) {
                if (e.u < 0 || e.v >= board.n() || e.u >= e.v || !board.unclaimed(e.u, e.v) ||
                    !seen.insert(e).second) {
                    fault("breaker returned illegal or duplicate edge (" + std::to_string(e.u) +
                          "," + std::to_string(e.v) + ")");
                    bad = true;
                    break;
                }
                board.claim(e, Owner::Breaker);
                res.transcript.body.push_back(claim_record(turn++, Owner::Breaker, e.u, e.v, 0, "-"));
            }
            if (bad) break;
        }

        if (board.remaining() == 0) {
            // endgame exhaustion: the only non-forfeiting completion
            res.outcome = Outcome::Exhausted;
            break;
        }

        // ---- Maker turn: one claim, or a declared stop
        MakerMove mv;
        try {
            mv = maker.move(board, maker_rng);
        } catch (const std::exception& e) {
            fault(std::string("maker threw: ") + e.what());
            break;
        }
        for (auto& m : mv.marks) {
            m["turn"] = turn;
            res.transcript.body.push_back(std::move(m));
        }
        if (std::holds_alternative<ClaimAction>(mv.act)) {
            const auto& c = std::get<ClaimAction>(mv.act);
            if (c.u < 0 || c.u >= board.n() || c.v < 0 || c.v >= board.n() || c.u == c.v ||
                !board.unclaimed(c.u, c.v)) {
                fault("maker claimed illegal edge (" + std::to_string(c.u) + "," +
                      std::to_string(c.v) + ")");
                break;
            }
            board.claim(make_edge(c.u, c.v), Owner::Maker);
            res.transcript.body.push_back(claim_record(turn++, Owner::Maker, c.u, c.v, c.stage, c.tag));
            if (c.stage == 1)
                ++res.stage1_moves;
            else
                ++res.stage2_moves;
        } else if (std::holds_alternative<StopAction>(mv.act)) {
            const auto& s = std::get<StopAction>(mv.act);
            res.outcome = s.outcome;
            res.failure_code = s.failure_code;
            stop_data = s.data;
            stopped = true;
        } else {
            // PassAction: desk-only null Maker. Guard against b = 0 stalls.
            res.transcript.body.push_back(mark_record(turn, 0, "pass"));
            if (board.b() == 0) {
                res.outcome = Outcome::Exhausted;
                break;
            }
        }
    }

    res.maker_moves = board.maker_moves();
    res.breaker_moves = board.breaker_moves();

    // Independent verification of a declared win, from the raw claim map only.
    if (res.outcome == Outcome::Win) {
        bool ok = false;
        if (stop_data.contains("final_matching")) {
            auto edges = edges_from_json(stop_data["final_matching"]);
            ok = verify_perfect_matching(board, edges).ok;
        }
        if (!ok) {
            res.outcome = Outcome::Faulty;
            stop_data["verify_failed"] = true;
        }
        res.verified = ok;
    }

    ojson footer{{"type", "footer"},
                 {"outcome", outcome_string(res.outcome, res.failure_code)},
                 {"verified", res.verified},
                 {"maker_moves", res.maker_moves},
                 {"breaker_moves", res.breaker_moves},
                 {"stage1_moves", res.stage1_moves},
                 {"stage2_moves", res.stage2_moves}};
    for (auto& [k, val] : stop_data.items()) footer[k] = val;
    res.p = footer.value("p", 0);
    res.q = footer.value("q", 0);
    res.monitor_events = footer.value("monitor_events", 0L);
    res.transcript.footer = std::move(footer);
    res.transcript.footer["accounting"] = move_accounting(res.transcript, params);
    return res;
}

} // namespace pmg
