#pragma once

#include <string>
#include <vector>

#include "dag.hpp"
#include "util.hpp"

namespace lcsl {

// Mixed graph under construction: each unordered pair is absent, undirected,
// or directed one way. Orientations only ever harden (absent/undirected to
// directed); contradictory assertions are logged and the earlier state kept,
// so the directed part stays acyclic throughout.
class PartialGraph {
public:
    PartialGraph() = default;
    explicit PartialGraph(int n) : n_(n), head_(static_cast<std::size_t>(n) * n, 0), visited_(n, 0) {}

    int num_vars() const { return n_; }

    bool adjacent(int x, int y) const { return head_[idx(x, y)] || head_[idx(y, x)]; }
    bool has_directed(int x, int y) const { return head_[idx(x, y)] == kHead && !head_[idx(y, x)]; }
    bool has_undirected(int x, int y) const {
        return head_[idx(x, y)] == kLine && head_[idx(y, x)] == kLine;
    }
    bool directed_any(int x, int y) const { return has_directed(x, y) || has_directed(y, x); }

    void set_undirected(int x, int y) {
        head_[idx(x, y)] = kLine;
        head_[idx(y, x)] = kLine;
    }

    // Asserts x->y. Refuses (logging a conflict) when y->x already stands or
    // when the orientation would close a directed cycle. Returns whether the
    // edge is directed x->y afterwards.
    bool direct(int x, int y) {
        if (has_directed(x, y)) return true;
        if (has_directed(y, x)) {
            log_conflict(x, y, "already directed the other way");
            return false;
        }
        if (reachable_directed(y, x)) {
            log_conflict(x, y, "would create a directed cycle");
            if (!adjacent(x, y)) set_undirected(x, y);
            return false;
        }
        head_[idx(x, y)] = kHead;
        head_[idx(y, x)] = 0;
        return true;
    }

    void set_visited(int x) { visited_[x] = 1; }
    bool visited(int x) const { return visited_[x] != 0; }

    // Nonadjacency is only trustworthy once one endpoint has had its full
    // neighborhood learned.
    bool known_nonadjacent(int x, int y) const {
        return !adjacent(x, y) && (visited_[x] || visited_[y]);
    }

    // An undirected edge may be propagated over only after both endpoints'
    // neighborhoods were learned: until then the pair could still turn out
    // to sit inside an undetected collider, which would flip the edge.
    bool settled(int x, int y) const { return visited_[x] && visited_[y]; }

    VarSet neighbors(int x) const {
        VarSet out;
        for (int y = 0; y < n_; ++y)
            if (y != x && adjacent(x, y)) out.push_back(y);
        return out;
    }

    VarSet parents_of(int x) const {
        VarSet out;
        for (int y = 0; y < n_; ++y)
            if (y != x && has_directed(y, x)) out.push_back(y);
        return out;
    }

    VarSet children_of(int x) const {
        VarSet out;
        for (int y = 0; y < n_; ++y)
            if (y != x && has_directed(x, y)) out.push_back(y);
        return out;
    }

    VarSet undirected_neighbors(int x) const {
        VarSet out;
        for (int y = 0; y < n_; ++y)
            if (y != x && has_undirected(x, y)) out.push_back(y);
        return out;
    }

    struct Edge {
        int from;
        int to;
        bool directed;
    };

    // Directed edges as (from, to); undirected ones once with from < to.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        for (int x = 0; x < n_; ++x)
            for (int y = 0; y < n_; ++y) {
                if (has_directed(x, y)) out.push_back({x, y, true});
                if (x < y && has_undirected(x, y)) out.push_back({x, y, false});
            }
        return out;
    }

    const std::vector<std::string>& conflicts() const { return conflicts_; }

private:
    static constexpr unsigned char kLine = 1;
    static constexpr unsigned char kHead = 2;

    std::size_t idx(int x, int y) const { return static_cast<std::size_t>(x) * n_ + y; }

    bool reachable_directed(int from, int to) const {
        if (from == to) return true;
        std::vector<char> seen(n_, 0);
        std::vector<int> stack{from};
        seen[from] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int c = 0; c < n_; ++c)
                if (!seen[c] && has_directed(v, c)) {
                    if (c == to) return true;
                    seen[c] = 1;
                    stack.push_back(c);
                }
        }
        return false;
    }

    void log_conflict(int x, int y, const std::string& why) {
        conflicts_.push_back("orientation conflict: " + std::to_string(x) + "->" +
                             std::to_string(y) + " (" + why + ")");
    }

    int n_ = 0;
    std::vector<unsigned char> head_;
    std::vector<char> visited_;
    std::vector<std::string> conflicts_;
};

// Orientation propagation to fixpoint. Only undirected marks change, only to
// directed. Nonadjacency preconditions use known_nonadjacent, and R1/R3/R4
// additionally require the edge they orient to be settled: those rules argue
// from "every collider here is already known", which holds only once both
// endpoints' neighborhoods were learned. R2 argues from acyclicity alone and
// needs no such certainty.
//   R1: a->b, b-c, a,c nonadjacent        => b->c
//   R2: a->c, c->b, a-b                   => a->b
//   R3: a-b, a-c, a-d, c->b, d->b, c,d nonadjacent => a->b
//   R4: a-b, a-d, d->c, c->b, b,d nonadjacent      => a->b
inline void meek_closure(PartialGraph& g) {
    const int n = g.num_vars();
    bool changed = true;
    while (changed) {
        changed = false;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                if (a == b) continue;
                if (g.has_directed(a, b)) {
                    // R1
                    for (int c = 0; c < n; ++c) {
                        if (c == a || c == b) continue;
                        if (g.has_undirected(b, c) && g.settled(b, c) &&
                            g.known_nonadjacent(a, c))
                            changed |= g.direct(b, c);
                    }
                    continue;
                }
                if (!g.has_undirected(a, b)) continue;
                // R2
                bool fired = false;
                for (int c = 0; c < n && !fired; ++c) {
                    if (c == a || c == b) continue;
                    if (g.has_directed(a, c) && g.has_directed(c, b)) fired = g.direct(a, b);
                }
                if (fired) {
                    changed = true;
                    continue;
                }
                if (!g.settled(a, b)) continue;
                // R3
                for (int c = 0; c < n && !fired; ++c) {
                    if (c == a || c == b || !g.has_undirected(a, c) || !g.has_directed(c, b))
                        continue;
                    for (int d = c + 1; d < n && !fired; ++d) {
                        if (d == a || d == b || !g.has_undirected(a, d) || !g.has_directed(d, b))
                            continue;
                        if (g.known_nonadjacent(c, d)) fired = g.direct(a, b);
                    }
                }
                if (fired) {
                    changed = true;
                    continue;
                }
                // R4
                for (int d = 0; d < n && !fired; ++d) {
                    if (d == a || d == b || !g.has_undirected(a, d) || !g.known_nonadjacent(b, d))
                        continue;
                    for (int c = 0; c < n && !fired; ++c) {
                        if (c == a || c == b || c == d) continue;
                        if (g.has_directed(d, c) && g.has_directed(c, b)) fired = g.direct(a, b);
                    }
                }
                if (fired) changed = true;
            }
    }
}

// CPDAG of a known DAG: skeleton, collider orientations, then Meek closure
// with every node marked visited so nonadjacency facts are all usable.
inline PartialGraph cpdag(const Dag& dag) {
    const int n = dag.num_vars();
    PartialGraph g(n);
    for (int v = 0; v < n; ++v) g.set_visited(v);
    for (int v = 0; v < n; ++v)
        for (int c : dag.children(v)) g.set_undirected(v, c);
    for (int v = 0; v < n; ++v) {
        const VarSet& par = dag.parents(v);
        for (std::size_t i = 0; i < par.size(); ++i)
            for (std::size_t j = i + 1; j < par.size(); ++j)
                if (!dag.adjacent(par[i], par[j])) {
                    g.direct(par[i], v);
                    g.direct(par[j], v);
                }
    }
    meek_closure(g);
    return g;
}

}  // namespace lcsl
