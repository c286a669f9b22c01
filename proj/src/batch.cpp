#include "pmgame/batch.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "pmgame/breakers.hpp"
#include "pmgame/game.hpp"
#include "pmgame/maker.hpp"

namespace pmg {

namespace {

Params params_for(const BatchConfig& cfg, int n) {
    Params p = derive_params(n, cfg.f, cfg.profile, cfg.overrides);
    if (cfg.b) {
        p.b = *cfg.b;
    } else if (cfg.b_frac) {
        p.b = std::max(1, static_cast<int>(*cfg.b_frac * p.b_max));
    }
    validate_params(p);
    return p;
}

GameRow play_one(const BatchConfig& cfg, const Params& params, uint64_t seed, size_t index) {
    auto t0 = std::chrono::steady_clock::now();
    Board board = new_board(params.n, params.b);
    auto maker = make_maker(cfg.maker, params);
    auto breaker = make_breaker(cfg.breaker);
    GameResult res = run_game(board, *maker, *breaker, seed, params);
    if (cfg.write_transcripts) {
        char name[32];
        std::snprintf(name, sizeof name, "game-%05zu.jsonl", index);
        res.transcript.save(cfg.out_dir / name);
    }
    GameRow row;
    row.n = params.n;
    row.b = params.b;
    row.seed = seed;
    row.outcome = outcome_string(res.outcome, res.failure_code);
    row.maker_moves = res.maker_moves;
    row.stage1_moves = res.stage1_moves;
    row.stage2_moves = res.stage2_moves;
    row.p = res.p;
    row.q = res.q;
    row.monitor_events = res.monitor_events;
    row.wallclock = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return row;
}

} // namespace

std::string csv_header() {
    return "n,b,seed,outcome,maker_moves,stage1_moves,stage2_moves,p,q,monitor_events,wallclock";
}

std::string csv_row(const GameRow& r) {
    std::ostringstream os;
    os << r.n << ',' << r.b << ',' << r.seed << ',' << r.outcome << ',' << r.maker_moves << ','
       << r.stage1_moves << ',' << r.stage2_moves << ',' << r.p << ',' << r.q << ','
       << r.monitor_events << ',' << r.wallclock;
    return os.str();
}

BatchSummary run_batch(const BatchConfig& cfg) {
    if (cfg.n_values.empty()) throw std::invalid_argument("batch config lists no n values");
    if (cfg.games <= 0) throw std::invalid_argument("batch config needs games >= 1");
    if (cfg.write_transcripts || !cfg.out_dir.empty())
        std::filesystem::create_directories(cfg.out_dir);

    struct Job {
        Params params;
        uint64_t seed;
    };
    std::vector<Job> jobs;
    for (int n : cfg.n_values) {
        Params params = params_for(cfg, n);
        for (int g = 0; g < cfg.games; ++g)
            jobs.push_back({params, derive_seed(cfg.seed, jobs.size())});
    }

    BatchSummary summary;
    summary.rows.resize(jobs.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1))
            summary.rows[i] = play_one(cfg, jobs[i].params, jobs[i].seed, i);
    };
    int threads = std::max(1, cfg.threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    for (const auto& row : summary.rows)
        if (row.outcome == "win") ++summary.wins;

    if (!cfg.out_dir.empty()) {
        summary.csv_path = cfg.out_dir / "summary.csv";
        std::ofstream os(summary.csv_path);
        if (!os) throw std::runtime_error("cannot write " + summary.csv_path.string());
        os << csv_header() << '\n';
        for (const auto& row : summary.rows) os << csv_row(row) << '\n';
    }
    return summary;
}

std::vector<SweepPoint> run_sweep(const BatchConfig& base, const std::vector<double>& fracs) {
    if (base.n_values.size() != 1)
        throw std::invalid_argument("sweep runs at a single n");
    std::vector<SweepPoint> points;
    for (size_t k = 0; k < fracs.size(); ++k) {
        BatchConfig cfg = base;
        cfg.b.reset();
        cfg.b_frac = fracs[k];
        if (!base.out_dir.empty()) {
            char sub[32];
            std::snprintf(sub, sizeof sub, "frac-%02zu", k);
            cfg.out_dir = base.out_dir / sub;
        }
        BatchSummary s = run_batch(cfg);
        SweepPoint pt;
        pt.n = base.n_values.front();
        pt.frac = fracs[k];
        pt.b = s.rows.front().b;
        pt.games = static_cast<long>(s.rows.size());
        pt.wins = s.wins;
        pt.win_rate = pt.games ? static_cast<double>(pt.wins) / pt.games : 0.0;
        double sum_moves = 0;
        for (const auto& r : s.rows) sum_moves += r.maker_moves;
        pt.mean_maker_moves = pt.games ? sum_moves / pt.games : 0.0;
        const double half = pt.n / 2.0;
        pt.mean_overhead = half > 0 ? (pt.mean_maker_moves - half) / half : 0.0;
        points.push_back(pt);
    }
    if (!base.out_dir.empty()) {
        std::filesystem::create_directories(base.out_dir);
        std::ofstream os(base.out_dir / "sweep.csv");
        os << "n,b_frac,b,games,wins,win_rate,mean_maker_moves,mean_overhead\n";
        for (const auto& pt : points)
            os << pt.n << ',' << pt.frac << ',' << pt.b << ',' << pt.games << ',' << pt.wins
               << ',' << pt.win_rate << ',' << pt.mean_maker_moves << ',' << pt.mean_overhead
               << '\n';
    }
    return points;
}

} // namespace pmg
