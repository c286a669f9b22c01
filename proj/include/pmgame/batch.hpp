#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pmgame/params.hpp"

namespace pmg {

struct BatchConfig {
    std::vector<int> n_values;
    std::optional<int> b;         // absolute bias; wins over b_frac
    std::optional<double> b_frac; // fraction of the derived b_max
    double f = 1.0;
    Profile profile = Profile::Desk;
    DeskOverrides overrides;
    std::string breaker = "random";
    std::string maker = "two_stage"; // two_stage | stage1_only | null
    int games = 1;
    uint64_t seed = 0;
    std::filesystem::path out_dir;
    int threads = 1;
    bool write_transcripts = true;
};

struct GameRow {
    int n = 0, b = 0;
    uint64_t seed = 0;
    std::string outcome;
    long maker_moves = 0, stage1_moves = 0, stage2_moves = 0;
    int p = 0, q = 0;
    long monitor_events = 0;
    double wallclock = 0.0; // seconds; excluded from the determinism contract
};

struct BatchSummary {
    std::vector<GameRow> rows; // game-index order, deterministic
    long wins = 0;
    std::filesystem::path csv_path;
};

std::string csv_header();
std::string csv_row(const GameRow& r);

// One game per (n, games) cell; per-game seed = derive_seed(base, row index).
// Transcripts land in out_dir/game-<index>.jsonl, summary in summary.csv.
BatchSummary run_batch(const BatchConfig& cfg);

struct SweepPoint {
    int n = 0;
    double frac = 0.0;
    int b = 0;
    long games = 0, wins = 0;
    double win_rate = 0.0, mean_maker_moves = 0.0, mean_overhead = 0.0;
};

// b-frac sweep at fixed n; emits sweep.csv with win-rate and overhead columns.
std::vector<SweepPoint> run_sweep(const BatchConfig& base, const std::vector<double>& fracs);

} // namespace pmg
