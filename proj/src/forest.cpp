#include "pmgame/forest.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace pmg {

void AugTree::add_child(VertexId parent, VertexId child) {
    auto it = nodes.find(parent);
    if (it == nodes.end()) throw std::invalid_argument("add_child: parent not in tree");
    if (contains(child)) throw std::invalid_argument("add_child: child already in tree");
    it->second.children.push_back(child);
    nodes[child] = Node{parent, it->second.depth + 1, {}};
}

std::vector<VertexId> AugTree::leaves() const {
    std::vector<VertexId> out;
    for (const auto& [v, node] : nodes)
        if (node.children.empty()) out.push_back(v);
    return out;
}

std::vector<VertexId> AugTree::vertices() const {
    std::vector<VertexId> out;
    out.reserve(nodes.size());
    for (const auto& [v, _] : nodes) out.push_back(v);
    return out;
}

std::vector<Edge> AugTree::edges() const {
    std::vector<Edge> out;
    for (const auto& [v, node] : nodes)
        if (node.parent >= 0) out.push_back(make_edge(v, node.parent));
    std::sort(out.begin(), out.end());
    return out;
}

int AugTree::degree(VertexId v) const {
    const auto& node = nodes.at(v);
    return static_cast<int>(node.children.size()) + (node.parent >= 0 ? 1 : 0);
}

bool is_augmenting(const AugTree& t) {
    if (t.root < 0 || !t.contains(t.root)) return false;
    if (t.nodes.at(t.root).parent != -1 || t.nodes.at(t.root).depth != 0) return false;
    int with_parent = 0;
    for (const auto& [v, node] : t.nodes) {
        if (v != t.root) {
            if (node.parent < 0 || !t.contains(node.parent)) return false;
            if (node.depth != t.nodes.at(node.parent).depth + 1) return false;
            const auto& sibs = t.nodes.at(node.parent).children;
            if (std::find(sibs.begin(), sibs.end(), v) == sibs.end()) return false;
            ++with_parent;
        }
        for (VertexId c : node.children) {
            if (!t.contains(c) || t.nodes.at(c).parent != v) return false;
        }
        if (node.depth % 2 == 1 && node.children.size() != 1) return false;
    }
    // connectivity: every non-root has a parent chain; parent/child mutual
    // consistency plus |E| = |V|-1 rules out cycles.
    return with_parent == t.size() - 1;
}

std::vector<Edge> canonical_matching(const AugTree& t) {
    if (!is_augmenting(t)) throw std::invalid_argument("canonical_matching: tree not augmenting");
    std::vector<Edge> out;
    for (const auto& [v, node] : t.nodes)
        if (node.depth % 2 == 1) out.push_back(make_edge(v, node.children.front()));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Edge> leaf_swap_matching(const AugTree& t, VertexId x) {
    if (!t.contains(x) || !t.nodes.at(x).children.empty())
        throw std::invalid_argument("leaf_swap_matching: x is not a leaf of the tree");
    std::set<Edge> nx;
    for (Edge e : canonical_matching(t)) nx.insert(e);
    for (VertexId v = x; v != t.root; v = t.nodes.at(v).parent) {
        Edge e = make_edge(v, t.nodes.at(v).parent);
        auto it = nx.find(e);
        if (it != nx.end())
            nx.erase(it);
        else
            nx.insert(e);
    }
    return {nx.begin(), nx.end()};
}

int tau(const Board& board, const std::vector<VertexId>& S, const Params& params) {
    int count = 0;
    for (VertexId v : S)
        if (is_troublesome(board, v, params)) ++count;
    return count;
}

bool is_nice(const AugTree& t, const Board& board, const Params& params) {
    if (!is_augmenting(t)) return false;
    auto lv = t.leaves();
    if (static_cast<int>(lv.size()) != params.ell) return false;
    for (VertexId x : lv)
        if (is_troublesome(board, x, params)) return false;
    for (const auto& [v, node] : t.nodes) {
        if (t.degree(v) > 3) return false;
        if (node.depth % 2 == 0 && !node.children.empty() && !is_troublesome(board, v, params) &&
            node.children.size() != 2)
            return false;
    }
    return true;
}

bool is_small(const AugTree& t, const Board& board, const Params& params) {
    return t.size() < 4 * (tau(board, t.vertices(), params) + params.ell);
}

std::optional<std::vector<Edge>> tree_perfect_matching(const std::vector<VertexId>& verts,
                                                       const std::vector<Edge>& edges) {
    if (verts.empty()) throw std::invalid_argument("tree_perfect_matching: empty vertex set");
    if (edges.size() != verts.size() - 1)
        throw std::invalid_argument("tree_perfect_matching: |E| != |V|-1, not a tree");
    std::map<VertexId, std::set<VertexId>> adj;
    for (VertexId v : verts) adj[v];
    if (adj.size() != verts.size())
        throw std::invalid_argument("tree_perfect_matching: duplicate vertices");
    for (Edge e : edges) {
        if (!adj.count(e.u) || !adj.count(e.v))
            throw std::invalid_argument("tree_perfect_matching: edge endpoint outside vertex set");
        adj[e.u].insert(e.v);
        adj[e.v].insert(e.u);
    }
    // connectivity check (acyclicity follows from the edge count)
    {
        std::set<VertexId> seen;
        std::vector<VertexId> stack{verts.front()};
        seen.insert(verts.front());
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            for (VertexId w : adj[v])
                if (seen.insert(w).second) stack.push_back(w);
        }
        if (seen.size() != verts.size())
            throw std::invalid_argument("tree_perfect_matching: disconnected input");
    }
    if (verts.size() % 2 != 0) return std::nullopt;

    // a leaf must match its parent; peel leaves inward, lowest id first
    std::vector<Edge> matching;
    std::set<VertexId> leaf_set;
    for (auto& [v, nb] : adj)
        if (nb.size() <= 1) leaf_set.insert(v);
    std::set<VertexId> alive(verts.begin(), verts.end());
    while (!alive.empty()) {
        while (!leaf_set.empty() && !alive.count(*leaf_set.begin())) leaf_set.erase(leaf_set.begin());
        if (leaf_set.empty()) return std::nullopt;
        VertexId v = *leaf_set.begin();
        leaf_set.erase(leaf_set.begin());
        if (adj[v].empty()) return std::nullopt; // isolated unmatched vertex
        VertexId p = *adj[v].begin();
        matching.push_back(make_edge(v, p));
        for (VertexId w : adj[p]) {
            if (w == v) continue;
            adj[w].erase(p);
            if (adj[w].size() <= 1) leaf_set.insert(w);
        }
        alive.erase(v);
        alive.erase(p);
        adj.erase(v);
        adj.erase(p);
    }
    std::sort(matching.begin(), matching.end());
    return matching;
}

bool is_matchable_tree(const std::vector<VertexId>& verts, const std::vector<Edge>& edges) {
    return tree_perfect_matching(verts, edges).has_value();
}

} // namespace pmg
