#include "pmgame/maker.hpp"

#include "pmgame/assembly.hpp"

namespace pmg {

namespace {

ojson edges_to_json(const std::vector<Edge>& edges) {
    ojson arr = ojson::array();
    for (Edge e : edges) arr.push_back(ojson::array({e.u, e.v}));
    return arr;
}

ojson matchable_to_json(const MatchableTree& t) {
    return ojson{{"verts", t.verts},
                 {"edges", edges_to_json(t.edges)},
                 {"matching", edges_to_json(t.matching)}};
}

ojson aug_tree_to_json(const AugTree& t) {
    ojson nodes = ojson::array();
    for (const auto& [v, node] : t.nodes)
        nodes.push_back(ojson{{"v", v}, {"parent", node.parent}, {"depth", node.depth}});
    return ojson{{"root", t.root}, {"nodes", std::move(nodes)}, {"leaves", t.leaves()}};
}

MakerMove concede(std::vector<ojson> marks, int stage, const std::string& code, ojson data) {
    marks.push_back(mark_record(0, stage, "concede:" + code, ojson{{"detail", data.value("failure_detail", "")}}));
    return {std::move(marks), StopAction{Outcome::Concede, code, std::move(data)}};
}

} // namespace

TwoStageMaker::TwoStageMaker(const Params& params)
    : params_(params), s1_(std::make_unique<Stage1Engine>(params)) {}
TwoStageMaker::~TwoStageMaker() = default;

MakerMove TwoStageMaker::move(const Board& board, Rng& rng) {
    if (!stage1_done_) {
        Stage1Engine::Step st = s1_->step(board);
        switch (st.kind) {
        case Stage1Engine::Step::Kind::Claim:
            return {{}, ClaimAction{st.u, st.v, 1, st.tag}};
        case Stage1Engine::Step::Kind::Fail: {
            ojson data{{"failure_code", st.code},
                       {"failure_detail", st.detail},
                       {"p", s1_->p()},
                       {"q", s1_->q()},
                       {"registry", s1_->dump_registry()}};
            return concede({}, 1, st.code, std::move(data));
        }
        case Stage1Engine::Step::Kind::Complete:
            break;
        }
        s1out_ = s1_->output();
        AuxMultigraph aux = build_aux(s1out_.nice_trees, board, params_);
        info_.leaf_sets = aux.leaf_sets;
        ojson end_data{{"p", s1out_.p},
                       {"q", s1out_.q},
                       {"stage1_moves", s1out_.maker_moves},
                       {"aux_min_degree", aux.min_degree},
                       {"aux_degree_bound", aux.degree_bound},
                       {"leaf_troublesome_warning", aux.leaf_troublesome_warning}};
        std::vector<ojson> marks;
        marks.push_back(mark_record(0, 1, "end", std::move(end_data)));
        s2_ = std::make_unique<Stage2Engine>(std::move(aux), params_, board.log().size());
        stage1_done_ = true;
        // Stage 2 opens on this same turn: the game still expects one claim.
        return stage2_move(board, rng, std::move(marks));
    }
    return stage2_move(board, rng, {});
}

MakerMove TwoStageMaker::stage2_move(const Board& board, Rng& rng, std::vector<ojson> marks) {
    Stage2Engine::Step st = s2_->step(board, rng);
    ojson base{{"p", s1out_.p},
               {"q", s1out_.q},
               {"stage2_claims", s2_->claims_used()},
               {"monitor_events", s2_->monitor_events()}};
    switch (st.kind) {
    case Stage2Engine::Step::Kind::Claim:
        if (!st.info.is_null()) marks.push_back(mark_record(0, 2, "p2_info", st.info));
        return {std::move(marks), ClaimAction{st.u, st.v, 2, st.tag}};
    case Stage2Engine::Step::Kind::Win: {
        std::vector<Edge> final_matching;
        try {
            final_matching = assemble_perfect_matching(s1out_.M, s1out_.nice_trees,
                                                       s1out_.matchable_trees, st.N, board.n());
        } catch (const AssemblyError& e) {
            base["failure_code"] = "INVARIANT_VIOLATION";
            base["failure_detail"] = std::string("assembly: ") + e.what();
            return concede(std::move(marks), 2, "INVARIANT_VIOLATION", std::move(base));
        }
        ojson nice = ojson::array();
        for (const auto& t : s1out_.nice_trees) nice.push_back(aug_tree_to_json(t));
        ojson matchable = ojson::array();
        for (const auto& t : s1out_.matchable_trees) matchable.push_back(matchable_to_json(t));
        base["hamilton"] = st.cycle;
        base["N"] = edges_to_json(st.N);
        base["M"] = edges_to_json(s1out_.M);
        base["nice_trees"] = std::move(nice);
        base["matchable_trees"] = std::move(matchable);
        base["final_matching"] = edges_to_json(final_matching);
        marks.push_back(
            mark_record(0, 2, "win", ojson{{"cycle", st.cycle}, {"N", edges_to_json(st.N)}}));
        return {std::move(marks), StopAction{Outcome::Win, "", std::move(base)}};
    }
    case Stage2Engine::Step::Kind::Concede:
        break;
    }
    base["failure_code"] = st.code;
    base["failure_detail"] = st.detail;
    base["phase"] = s2_->phase();
    return concede(std::move(marks), 2, st.code, std::move(base));
}

Stage1OnlyMaker::Stage1OnlyMaker(const Params& params)
    : params_(params), s1_(std::make_unique<Stage1Engine>(params)) {}
Stage1OnlyMaker::~Stage1OnlyMaker() = default;

MakerMove Stage1OnlyMaker::move(const Board& board, Rng&) {
    Stage1Engine::Step st = s1_->step(board);
    switch (st.kind) {
    case Stage1Engine::Step::Kind::Claim:
        return {{}, ClaimAction{st.u, st.v, 1, st.tag}};
    case Stage1Engine::Step::Kind::Fail: {
        ojson data{{"failure_code", st.code},
                   {"failure_detail", st.detail},
                   {"p", s1_->p()},
                   {"q", s1_->q()},
                   {"registry", s1_->dump_registry()}};
        return concede({}, 1, st.code, std::move(data));
    }
    case Stage1Engine::Step::Kind::Complete:
        break;
    }
    Stage1Output out = s1_->output();
    info_.leaf_sets = s1_->leaf_sets();
    ojson data{{"p", out.p},
               {"q", out.q},
               {"stage1_moves", out.maker_moves},
               {"registry", s1_->dump_registry()}};
    std::vector<ojson> marks;
    marks.push_back(mark_record(0, 1, "end",
                                ojson{{"p", out.p}, {"q", out.q}, {"stage1_moves", out.maker_moves}}));
    return {std::move(marks), StopAction{Outcome::Stage1Complete, "", std::move(data)}};
}

std::unique_ptr<MakerStrategy> make_maker(const std::string& name, const Params& params) {
    if (name == "two_stage") return std::make_unique<TwoStageMaker>(params);
    if (name == "stage1_only") return std::make_unique<Stage1OnlyMaker>(params);
    if (name == "null") return std::make_unique<NullMaker>();
    throw std::invalid_argument("unknown maker '" + name + "'");
}

} // namespace pmg
