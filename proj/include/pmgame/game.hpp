#pragma once

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "pmgame/board.hpp"
#include "pmgame/rng.hpp"
#include "pmgame/transcript.hpp"

namespace pmg {

// What the simulator exposes to adversaries beyond the board itself: after
// Stage 1 ends, Maker's nice-tree leaf sets are published (perfect-information
// setting; leaf_cutter consumes this).
struct PublicInfo {
    std::optional<std::vector<std::vector<VertexId>>> leaf_sets;
};

struct ClaimAction {
    VertexId u, v;       // order preserved in the record (Phase-1 orientation)
    int stage;           // 1 or 2
    std::string tag;     // 1a | 1b.1 | 1b.2 | 2a | 2b | p1 | p2
};
struct StopAction {
    Outcome outcome;     // Win | Concede | Stage1Complete
    std::string failure_code; // for Concede
    ojson data;          // merged into the footer
};
struct PassAction {};    // desk-only null Maker

struct MakerMove {
    std::vector<ojson> marks; // emitted before the action (end / win / concede / p2_info)
    std::variant<ClaimAction, StopAction, PassAction> act;
};

class MakerStrategy {
  public:
    virtual ~MakerStrategy() = default;
    virtual std::string name() const = 0;
    virtual MakerMove move(const Board& board, Rng& rng) = 0;
    virtual const PublicInfo& public_info() const {
        static const PublicInfo empty;
        return empty;
    }
};

class BreakerStrategy {
  public:
    virtual ~BreakerStrategy() = default;
    virtual std::string name() const = 0;
    // Must return exactly `budget` distinct unclaimed edges (budget is already
    // clamped to the number of unclaimed edges remaining).
    virtual std::vector<Edge> move(const Board& board, int budget, Rng& rng,
                                   const PublicInfo& info) = 0;
};

struct GameResult {
    Transcript transcript;
    Outcome outcome = Outcome::Exhausted;
    std::string failure_code;
    bool verified = false; // independent perfect-matching verification (wins only)
    long maker_moves = 0, breaker_moves = 0;
    long stage1_moves = 0, stage2_moves = 0;
    int p = 0, q = 0;
    long monitor_events = 0;
};

// Breaker moves first; each round is one Breaker turn of min(b, remaining)
// claims followed by one Maker claim. Identical (seed, params, strategies)
// produce byte-identical transcripts.
GameResult run_game(Board& board, MakerStrategy& maker, BreakerStrategy& breaker,
                    uint64_t seed, const Params& params);

} // namespace pmg
