#pragma once

#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "pmgame/params.hpp"
#include "pmgame/types.hpp"

namespace pmg {

using Bitset = boost::dynamic_bitset<>;

// Tri-state edge ownership over K_n. One bit row per vertex per player:
// Theta(n^2) bits per player, O(1) claim lookup, bitwise scans for the
// candidate-partner loops in Stage 1.
class Board {
  public:
    struct Logged {
        Edge e;
        Owner who;
    };

    Board(int n, int b);

    int n() const { return n_; }
    int b() const { return b_; }

    Owner state(Edge e) const;
    bool unclaimed(VertexId u, VertexId v) const {
        return u != v && !maker_[u].test(v) && !breaker_[u].test(v);
    }

    // Throws std::logic_error on an already-claimed edge (caller is faulty).
    void claim(Edge e, Owner who);

    int dB(VertexId v) const { return dB_[v]; }
    int dM(VertexId v) const { return dM_[v]; }
    long maker_moves() const { return maker_moves_; }
    long breaker_moves() const { return breaker_moves_; }
    long remaining() const { return remaining_; }

    const Bitset& maker_row(VertexId v) const { return maker_[v]; }
    const Bitset& breaker_row(VertexId v) const { return breaker_[v]; }
    // Row of still-unclaimed partners of v (excludes v itself).
    Bitset unclaimed_row(VertexId v) const;

    const std::vector<Logged>& log() const { return log_; }

    // All unclaimed edges with one endpoint in each set, sorted canonically.
    // A and B must be disjoint.
    std::vector<Edge> unclaimed_between(const std::vector<VertexId>& A,
                                        const std::vector<VertexId>& B) const;

    // Recomputes degree counters from the bit rows (audit support).
    bool degrees_consistent() const;

  private:
    int n_;
    int b_;
    std::vector<Bitset> maker_, breaker_;
    std::vector<int> dB_, dM_;
    long maker_moves_ = 0, breaker_moves_ = 0;
    long remaining_;
    std::vector<Logged> log_;
};

// n even and >= 4; b >= 1 in game use (b = 0 permitted for desk null-Breaker runs).
Board new_board(int n, int b);

bool is_troublesome(const Board& board, VertexId v, const Params& params);

} // namespace pmg
