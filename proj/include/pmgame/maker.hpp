#pragma once

#include <memory>

#include "pmgame/game.hpp"
#include "pmgame/stage1.hpp"
#include "pmgame/stage2.hpp"

namespace pmg {

// The two-stage strategy: Stage 1 builds M + nice trees + matchable trees,
// then Stage 2 plays the Hamilton-cycle game on F' and the final matching is
// assembled from the pieces. Leaf sets are published when Stage 1 ends.
class TwoStageMaker : public MakerStrategy {
  public:
    explicit TwoStageMaker(const Params& params);
    ~TwoStageMaker() override;

    std::string name() const override { return "two_stage"; }
    MakerMove move(const Board& board, Rng& rng) override;
    const PublicInfo& public_info() const override { return info_; }

    const Stage1Engine* stage1() const { return s1_.get(); }
    const Stage2Engine* stage2() const { return s2_.get(); }

  private:
    MakerMove stage2_move(const Board& board, Rng& rng, std::vector<ojson> marks);

    Params params_;
    PublicInfo info_;
    std::unique_ptr<Stage1Engine> s1_;
    std::unique_ptr<Stage2Engine> s2_;
    Stage1Output s1out_;
    bool stage1_done_ = false;
};

// Stops with Outcome::Stage1Complete (registry dumped into the footer)
// instead of entering Stage 2. Drives the stage-1 contract checks.
class Stage1OnlyMaker : public MakerStrategy {
  public:
    explicit Stage1OnlyMaker(const Params& params);
    ~Stage1OnlyMaker() override;

    std::string name() const override { return "stage1_only"; }
    MakerMove move(const Board& board, Rng& rng) override;
    const PublicInfo& public_info() const override { return info_; }

    const Stage1Engine* stage1() const { return s1_.get(); }

  private:
    Params params_;
    PublicInfo info_;
    std::unique_ptr<Stage1Engine> s1_;
};

// Always passes; desk-only (Breaker-solo experiments, b = 0 smoke tests).
class NullMaker : public MakerStrategy {
  public:
    std::string name() const override { return "null"; }
    MakerMove move(const Board&, Rng&) override { return {{}, PassAction{}}; }
};

// two_stage | stage1_only | null
std::unique_ptr<MakerStrategy> make_maker(const std::string& name, const Params& params);

} // namespace pmg
