#include "pmgame/board.hpp"

#include <algorithm>
#include <stdexcept>

namespace pmg {

Board::Board(int n, int b)
    : n_(n),
      b_(b),
      maker_(n, Bitset(n)),
      breaker_(n, Bitset(n)),
      dB_(n, 0),
      dM_(n, 0),
      remaining_(static_cast<long>(n) * (n - 1) / 2) {}

Board new_board(int n, int b) {
    if (n < 4 || n % 2 != 0)
        throw std::invalid_argument("board requires even n >= 4 (perfect matching game), got n=" +
                                    std::to_string(n));
    if (b < 0) throw std::invalid_argument("bias b must be >= 0");
    return Board(n, b);
}

Owner Board::state(Edge e) const {
    if (maker_[e.u].test(e.v)) return Owner::Maker;
    if (breaker_[e.u].test(e.v)) return Owner::Breaker;
    return Owner::None;
}

void Board::claim(Edge e, Owner who) {
    if (e.u < 0 || e.v >= n_ || e.u >= e.v)
        throw std::invalid_argument("claim: malformed edge");
    if (who == Owner::None) throw std::invalid_argument("claim: owner required");
    if (!unclaimed(e.u, e.v))
        throw std::logic_error("claim on already-claimed edge (" + std::to_string(e.u) + "," +
                               std::to_string(e.v) + ")");
    auto& rows = (who == Owner::Maker) ? maker_ : breaker_;
    rows[e.u].set(e.v);
    rows[e.v].set(e.u);
    if (who == Owner::Maker) {
        ++dM_[e.u];
        ++dM_[e.v];
        ++maker_moves_;
    } else {
        ++dB_[e.u];
        ++dB_[e.v];
        ++breaker_moves_;
    }
    --remaining_;
    log_.push_back({e, who});
}

Bitset Board::unclaimed_row(VertexId v) const {
    Bitset row = maker_[v] | breaker_[v];
    row.flip();
    row.reset(v);
    return row;
}

std::vector<Edge> Board::unclaimed_between(const std::vector<VertexId>& A,
                                           const std::vector<VertexId>& B) const {
    Bitset inA(n_), inB(n_);
    for (VertexId a : A) inA.set(a);
    for (VertexId b : B) inB.set(b);
    if ((inA & inB).any()) throw std::invalid_argument("unclaimed_between: sets overlap");
    std::vector<Edge> out;
    for (VertexId a : A)
        for (VertexId b : B)
            if (unclaimed(a, b)) out.push_back(make_edge(a, b));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool Board::degrees_consistent() const {
    for (int v = 0; v < n_; ++v) {
        if (static_cast<int>(maker_[v].count()) != dM_[v]) return false;
        if (static_cast<int>(breaker_[v].count()) != dB_[v]) return false;
        if (maker_[v].test(v) || breaker_[v].test(v)) return false;
        if ((maker_[v] & breaker_[v]).any()) return false;
    }
    return true;
}

bool is_troublesome(const Board& board, VertexId v, const Params& params) {
    return board.dB(v) > params.troublesome_threshold;
}

std::string outcome_string(Outcome o, const std::string& failure_code) {
    switch (o) {
        case Outcome::Win: return "win";
        case Outcome::Concede: return "concede:" + failure_code;
        case Outcome::Exhausted: return "exhausted";
        case Outcome::Faulty: return "faulty";
        case Outcome::Stage1Complete: return "stage1_complete";
    }
    return "unknown";
}

} // namespace pmg
