#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pmgame/batch.hpp"
#include "pmgame/cli.hpp"
#include "pmgame/rng.hpp"
#include "pmgame/transcript.hpp"

using namespace pmg;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("pmgame-test-" + name);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& file) {
    std::ifstream in(file);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// summary.csv minus the wallclock column (the only nondeterministic field)
std::vector<std::string> stable_csv(const fs::path& file) {
    std::istringstream in(slurp(file));
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);)
        lines.push_back(line.substr(0, line.rfind(',')));
    return lines;
}

BatchConfig stage1_config(const fs::path& out) {
    BatchConfig cfg;
    cfg.n_values = {16};
    cfg.maker = "stage1_only";
    cfg.games = 3;
    cfg.seed = 42;
    cfg.out_dir = out;
    return cfg;
}

int run_cli(std::initializer_list<std::string> args, std::string* out = nullptr) {
    std::vector<std::string> storage{"pmgame"};
    storage.insert(storage.end(), args);
    std::vector<char*> argv;
    for (auto& s : storage) argv.push_back(s.data());
    std::ostringstream captured;
    std::streambuf* old = std::cout.rdbuf(captured.rdbuf());
    int rc = cli_main(static_cast<int>(argv.size()), argv.data());
    std::cout.rdbuf(old);
    if (out) *out = captured.str();
    return rc;
}

} // namespace

TEST_CASE("csv schema is pinned") {
    CHECK(csv_header() ==
          "n,b,seed,outcome,maker_moves,stage1_moves,stage2_moves,p,q,monitor_events,wallclock");
    GameRow row;
    row.n = 8;
    row.b = 2;
    row.seed = 5;
    row.outcome = "win";
    row.maker_moves = 10;
    row.stage1_moves = 4;
    row.stage2_moves = 6;
    row.p = 2;
    row.q = 0;
    row.monitor_events = 0;
    row.wallclock = 0.25;
    CHECK(csv_row(row) == "8,2,5,win,10,4,6,2,0,0,0.25");
}

TEST_CASE("run_batch is deterministic across runs and thread counts") {
    fs::path a = fresh_dir("batch-a"), b = fresh_dir("batch-b"), c = fresh_dir("batch-c");
    BatchConfig ca = stage1_config(a);
    BatchConfig cb = stage1_config(b);
    BatchConfig cc = stage1_config(c);
    cc.threads = 2;

    BatchSummary sa = run_batch(ca);
    BatchSummary sb = run_batch(cb);
    BatchSummary sc = run_batch(cc);

    REQUIRE(sa.rows.size() == 3);
    for (size_t i = 0; i < 3; ++i) {
        CHECK(sa.rows[i].seed == derive_seed(42, i));
        CHECK(sa.rows[i].outcome == "stage1_complete");
        CHECK(sa.rows[i].n == 16);
        CHECK(sa.rows[i].p == 2);
        CHECK(sa.rows[i].stage2_moves == 0);
    }
    CHECK(sa.wins == 0);

    CHECK(stable_csv(a / "summary.csv") == stable_csv(b / "summary.csv"));
    CHECK(stable_csv(a / "summary.csv") == stable_csv(c / "summary.csv"));
    for (int g = 0; g < 3; ++g) {
        char name[32];
        std::snprintf(name, sizeof name, "game-%05d.jsonl", g);
        CHECK(slurp(a / name) == slurp(b / name));
        CHECK(slurp(a / name) == slurp(c / name));
    }
}

TEST_CASE("run_batch orders rows by n then game index") {
    BatchConfig cfg;
    cfg.n_values = {12, 16};
    cfg.maker = "stage1_only";
    cfg.games = 2;
    cfg.seed = 7;
    cfg.write_transcripts = false;
    BatchSummary s = run_batch(cfg);
    REQUIRE(s.rows.size() == 4);
    CHECK(s.rows[0].n == 12);
    CHECK(s.rows[1].n == 12);
    CHECK(s.rows[2].n == 16);
    CHECK(s.rows[3].n == 16);
    for (size_t i = 0; i < 4; ++i) CHECK(s.rows[i].seed == derive_seed(7, i));
    CHECK(s.csv_path.empty()); // no out_dir, no files
}

TEST_CASE("run_batch config validation and transcript toggle") {
    BatchConfig bad;
    CHECK_THROWS_AS((void)run_batch(bad), std::invalid_argument);
    bad.n_values = {16};
    bad.games = 0;
    CHECK_THROWS_AS((void)run_batch(bad), std::invalid_argument);

    fs::path dir = fresh_dir("batch-notr");
    BatchConfig cfg = stage1_config(dir);
    cfg.games = 1;
    cfg.write_transcripts = false;
    run_batch(cfg);
    CHECK(fs::exists(dir / "summary.csv"));
    CHECK_FALSE(fs::exists(dir / "game-00000.jsonl"));
}

TEST_CASE("bias resolution: absolute b beats b_frac beats derived default") {
    BatchConfig cfg;
    cfg.n_values = {256};
    cfg.maker = "null";
    cfg.write_transcripts = false;
    cfg.b_frac = 0.5; // desk b_max at n = 256 is 16
    BatchSummary s = run_batch(cfg);
    CHECK(s.rows[0].b == 8);
    CHECK(s.rows[0].outcome == "exhausted"); // null Maker never claims

    cfg.b = 3;
    CHECK(run_batch(cfg).rows[0].b == 3);
}

TEST_CASE("run_sweep walks b_max fractions at one n") {
    fs::path dir = fresh_dir("sweep");
    BatchConfig base;
    base.n_values = {64};
    base.maker = "stage1_only";
    base.games = 2;
    base.seed = 9;
    base.out_dir = dir;
    auto points = run_sweep(base, {0.25, 1.0});
    REQUIRE(points.size() == 2);
    CHECK(points[0].frac == 0.25);
    CHECK(points[0].b == 1); // max(1, 0.25 * 4)
    CHECK(points[1].b == 4); // desk b_max at n = 64
    for (const auto& pt : points) {
        CHECK(pt.n == 64);
        CHECK(pt.games == 2);
        CHECK(pt.wins == 0); // stage1_only never reports "win"
        CHECK(pt.win_rate == 0.0);
    }

    auto csv = stable_csv(dir / "sweep.csv"); // no wallclock column; strip is harmless
    REQUIRE(csv.size() == 3);
    CHECK(slurp(dir / "sweep.csv").rfind("n,b_frac,b,games,wins,win_rate,", 0) == 0);

    base.n_values = {16, 64};
    CHECK_THROWS_AS((void)run_sweep(base, {0.5}), std::invalid_argument);
}

TEST_CASE("cli run, replay and audit round-trip") {
    fs::path dir = fresh_dir("cli-run");
    std::string out;
    int rc = run_cli({"run", "--n", "24", "--seed", "3", "--games", "1", "--out", dir.string()},
                     &out);
    CHECK(rc == 0);
    CHECK(out.find("games 1") != std::string::npos);
    CHECK(out.find("summary: ") != std::string::npos);
    fs::path game = dir / "game-00000.jsonl";
    REQUIRE(fs::exists(game));

    rc = run_cli({"replay", "--in", game.string()}, &out);
    CHECK(rc == 0);
    CHECK(out.find("transcript bytes: identical") != std::string::npos);

    rc = run_cli({"audit", "--in", game.string()}, &out);
    CHECK(rc == 0);
    CHECK(out.find("\"ok\": true") != std::string::npos);
}

TEST_CASE("cli surface: version, bad input, out-dir resolution") {
    std::string out;
    CHECK(run_cli({"--version"}, &out) == 0);
    CHECK_FALSE(out.empty());

    CHECK(run_cli({}) != 0);                                    // subcommand required
    CHECK(run_cli({"replay", "--in", "/nonexistent.jsonl"}) == 2);
    CHECK(run_cli({"run"}) != 0);                               // --n required
    CHECK(run_cli({"run", "--n", "24", "--profile", "bogus"}) != 0);

    // PMGAME_OUT is the fallback; --out still wins
    fs::path env_dir = fresh_dir("cli-env"), flag_dir = fresh_dir("cli-flag");
    setenv("PMGAME_OUT", env_dir.string().c_str(), 1);
    CHECK(run_cli({"run", "--n", "16", "--maker", "stage1_only", "--games", "1"}) == 0);
    CHECK(fs::exists(env_dir / "summary.csv"));
    CHECK(run_cli({"run", "--n", "16", "--maker", "stage1_only", "--games", "1", "--out",
                   flag_dir.string()}) == 0);
    CHECK(fs::exists(flag_dir / "summary.csv"));
    CHECK(fs::exists(flag_dir / "game-00000.jsonl"));
    unsetenv("PMGAME_OUT");
}
