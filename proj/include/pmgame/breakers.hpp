#pragma once

#include <memory>

#include "pmgame/game.hpp"

namespace pmg {

// Uniform sample of `budget` distinct unclaimed edges.
class RandomBreaker final : public BreakerStrategy {
  public:
    std::string name() const override { return "random"; }
    std::vector<Edge> move(const Board&, int budget, Rng&, const PublicInfo&) override;
};

// Chvátal–Erdős-style: floods a Maker-untouched vertex. Targets the pool
// vertex with the fewest unclaimed incident edges (fewest Maker options),
// retargeting once the target gains a Maker edge.
class IsolatorBreaker final : public BreakerStrategy {
  public:
    std::string name() const override { return "isolator"; }
    std::vector<Edge> move(const Board&, int budget, Rng&, const PublicInfo&) override;
};

// Attacks Maker's highest-dM vertices (ties: lowest id).
class MaxDegreeBreaker final : public BreakerStrategy {
  public:
    std::string name() const override { return "max_degree"; }
    std::vector<Edge> move(const Board&, int budget, Rng&, const PublicInfo&) override;
};

// Plays randomly until Maker's leaf sets are published, then wipes unclaimed
// inter-leaf-set edges in ascending order (stresses Stage 2 directly).
class LeafCutterBreaker final : public BreakerStrategy {
  public:
    std::string name() const override { return "leaf_cutter"; }
    std::vector<Edge> move(const Board&, int budget, Rng&, const PublicInfo&) override;
};

// Replays the Breaker side of a stored transcript.
class ScriptedBreaker final : public BreakerStrategy {
  public:
    explicit ScriptedBreaker(const Transcript& source);
    std::string name() const override { return "scripted"; }
    std::vector<Edge> move(const Board&, int budget, Rng&, const PublicInfo&) override;

  private:
    std::vector<std::vector<Edge>> rounds_;
    size_t next_ = 0;
};

// Claims nothing; usable only with b = 0 boards.
class NullBreaker final : public BreakerStrategy {
  public:
    std::string name() const override { return "null"; }
    std::vector<Edge> move(const Board&, int budget, Rng&, const PublicInfo&) override;
};

// name: random | isolator | max_degree | leaf_cutter | null | scripted:<path>
std::unique_ptr<BreakerStrategy> make_breaker(const std::string& name);

} // namespace pmg
