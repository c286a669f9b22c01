#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace pmg {

using VertexId = int;

// Unordered edge, canonical form: u < v.
struct Edge {
    VertexId u{-1};
    VertexId v{-1};
    auto operator<=>(const Edge&) const = default;
};

inline Edge make_edge(VertexId a, VertexId b) {
    if (a == b) throw std::invalid_argument("self-loop edge (" + std::to_string(a) + ")");
    return a < b ? Edge{a, b} : Edge{b, a};
}

enum class Owner : uint8_t { None = 0, Maker = 1, Breaker = 2 };

enum class Outcome { Win, Concede, Exhausted, Faulty, Stage1Complete };

// Failure codes carried by Concede outcomes (and in CSV as "concede:<code>").
inline constexpr const char* kGrowthStarved   = "GROWTH_STARVED";
inline constexpr const char* kCloseStarved    = "CLOSE_STARVED";
inline constexpr const char* kPairStarved     = "PAIR_STARVED";
inline constexpr const char* kPhase1Isolated  = "PHASE1_ISOLATED";
inline constexpr const char* kPhase2Stuck     = "PHASE2_STUCK";
inline constexpr const char* kBudgetExceeded  = "BUDGET_EXCEEDED";

std::string outcome_string(Outcome o, const std::string& failure_code);

} // namespace pmg
