#include "pmgame/cli.hpp"

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "pmgame/audit.hpp"
#include "pmgame/batch.hpp"
#include "pmgame/breakers.hpp"
#include "pmgame/game.hpp"
#include "pmgame/maker.hpp"
#include "pmgame/version.hpp"

namespace pmg {

namespace {

// --out beats PMGAME_OUT beats the built-in default
std::filesystem::path resolve_out(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("PMGAME_OUT"); env && *env) return env;
    return "pmgame-out";
}

struct CommonFlags {
    int n = 0;
    int b = -1;
    double b_frac = -1.0;
    double f = 1.0;
    int ell = 0;
    double threshold = -1.0;
    std::string breaker = "random";
    std::string maker = "two_stage";
    int games = 1;
    uint64_t seed = 0;
    std::string out;
    std::string profile = "desk";
    int threads = 1;
    bool no_transcripts = false;
};

void add_common(CLI::App& cmd, CommonFlags& fl, bool with_bias) {
    cmd.add_option("--n", fl.n, "board size (even)")->required();
    if (with_bias) {
        cmd.add_option("--b", fl.b, "Breaker bias (edges per turn)");
        cmd.add_option("--b-frac", fl.b_frac, "bias as a fraction of derived b_max")
            ->check(CLI::Range(0.0, 1.0));
    }
    cmd.add_option("--f", fl.f, "paper f(n) constant");
    cmd.add_option("--ell", fl.ell, "leaves per nice tree (desk override)");
    cmd.add_option("--threshold", fl.threshold, "troublesome threshold (desk override)");
    cmd.add_option("--breaker", fl.breaker, "random | isolator | max_degree | leaf_cutter");
    cmd.add_option("--maker", fl.maker, "two_stage | stage1_only | null");
    cmd.add_option("--games", fl.games, "games per configuration");
    cmd.add_option("--seed", fl.seed, "base seed");
    cmd.add_option("--out", fl.out, "output directory (or set PMGAME_OUT)");
    cmd.add_option("--profile", fl.profile, "paper | desk")
        ->check(CLI::IsMember({"paper", "desk"}));
    cmd.add_option("--threads", fl.threads, "parallel games");
    cmd.add_flag("--no-transcripts", fl.no_transcripts, "skip per-game JSONL files");
}

BatchConfig to_config(const CommonFlags& fl) {
    BatchConfig cfg;
    cfg.n_values = {fl.n};
    if (fl.b >= 0) cfg.b = fl.b;
    if (fl.b_frac >= 0) cfg.b_frac = fl.b_frac;
    cfg.f = fl.f;
    cfg.profile = fl.profile == "paper" ? Profile::Paper : Profile::Desk;
    if (fl.ell > 0) cfg.overrides.ell = fl.ell;
    if (fl.threshold >= 0) cfg.overrides.troublesome_threshold = fl.threshold;
    cfg.breaker = fl.breaker;
    cfg.maker = fl.maker;
    cfg.games = fl.games;
    cfg.seed = fl.seed;
    cfg.out_dir = resolve_out(fl.out);
    cfg.threads = fl.threads;
    cfg.write_transcripts = !fl.no_transcripts;
    return cfg;
}

int cmd_run(const CommonFlags& fl) {
    BatchSummary s = run_batch(to_config(fl));
    long total = static_cast<long>(s.rows.size());
    std::map<std::string, long> outcomes;
    double moves = 0;
    for (const auto& r : s.rows) {
        ++outcomes[r.outcome];
        moves += r.maker_moves;
    }
    std::cout << "games " << total << ", wins " << s.wins << " ("
              << (total ? 100.0 * s.wins / total : 0.0) << "%), mean maker moves "
              << (total ? moves / total : 0.0) << "\n";
    for (const auto& [k, c] : outcomes) std::cout << "  " << k << ": " << c << "\n";
    if (!s.csv_path.empty()) std::cout << "summary: " << s.csv_path.string() << "\n";
    return 0;
}

int cmd_replay(const std::string& in) {
    Transcript orig = Transcript::load(in);
    const int n = orig.header.at("n").get<int>();
    const int b = orig.header.at("b").get<int>();
    const uint64_t seed = orig.header.at("seed").get<uint64_t>();
    Params params = params_from_json(orig.header.at("params"));
    auto maker = make_maker(orig.header.value("maker", "two_stage"), params);
    std::string breaker_name = orig.header.value("breaker", "random");
    std::unique_ptr<BreakerStrategy> breaker;
    if (breaker_name == "scripted")
        breaker = std::make_unique<ScriptedBreaker>(orig);
    else
        breaker = make_breaker(breaker_name);
    Board board = new_board(n, b);
    GameResult res = run_game(board, *maker, *breaker, seed, params);

    const bool bytes_equal = res.transcript.to_jsonl() == orig.to_jsonl();
    const std::string stored = orig.footer.is_null() ? "" : orig.footer.value("outcome", "");
    const std::string fresh = res.transcript.footer.value("outcome", "");
    const bool verdict_match = stored == fresh;
    std::cout << "replay verdict: " << fresh << (verdict_match ? " (matches stored)" : " (STORED: " + stored + ")")
              << "\ntranscript bytes: " << (bytes_equal ? "identical" : "DIVERGED") << "\n";
    return bytes_equal && verdict_match ? 0 : 1;
}

int cmd_audit(const std::string& in) {
    Transcript t = Transcript::load(in);
    AuditReport rep = audit_transcript(t);
    std::cout << rep.to_json().dump(2) << "\n";
    return rep.ok ? 0 : 1;
}

int cmd_sweep(const CommonFlags& fl, const std::vector<double>& fracs) {
    BatchConfig cfg = to_config(fl);
    auto points = run_sweep(cfg, fracs);
    std::cout << "b_frac,b,win_rate,mean_overhead\n";
    for (const auto& pt : points)
        std::cout << pt.frac << ',' << pt.b << ',' << pt.win_rate << ',' << pt.mean_overhead
                  << "\n";
    std::cout << "sweep: " << (cfg.out_dir / "sweep.csv").string() << "\n";
    return 0;
}

} // namespace

int cli_main(int argc, char** argv) {
    CLI::App app{"biased perfect-matching game simulator"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    CommonFlags run_fl;
    CLI::App* run = app.add_subcommand("run", "play seeded games and write transcripts + CSV");
    add_common(*run, run_fl, true);

    std::string replay_in;
    CLI::App* replay = app.add_subcommand("replay", "re-run a transcript and byte-compare");
    replay->add_option("--in", replay_in, "transcript (.jsonl)")->required();

    std::string audit_in;
    CLI::App* audit = app.add_subcommand("audit", "re-check every invariant against a replay");
    audit->add_option("--in", audit_in, "transcript (.jsonl)")->required();

    CommonFlags sweep_fl;
    std::vector<double> fracs{0.2, 0.4, 0.6, 0.8, 1.0};
    CLI::App* sweep = app.add_subcommand("sweep", "win rate across b fractions of b_max");
    add_common(*sweep, sweep_fl, false);
    sweep->add_option("--fracs", fracs, "fractions of b_max")->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(run_fl);
        if (replay->parsed()) return cmd_replay(replay_in);
        if (audit->parsed()) return cmd_audit(audit_in);
        if (sweep->parsed()) return cmd_sweep(sweep_fl, fracs);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

} // namespace pmg
