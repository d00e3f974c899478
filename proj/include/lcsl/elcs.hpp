#pragma once

#include <deque>

#include "ci.hpp"
#include "emb.hpp"
#include "partial_graph.hpp"
#include "util.hpp"

namespace lcsl {

struct LocalStructure {
    VarSet parents;
    VarSet children;
    VarSet undistinguished;
    VarSet mb;  // Markov blanket learned for the target by its own MB call
    PartialGraph graph;
    long long total_ci = 0;
    int mb_calls = 0;
};

// Writes one learned neighborhood into the graph. Earlier directions win over
// later assertions; adjacencies recorded by other merges are never deleted.
inline void merge_local(PartialGraph& g, int x, const MbResult& mb) {
    g.set_visited(x);
    auto assert_directed = [&g](int from, int to) { g.direct(from, to); };
    for (int y : mb.parents) assert_directed(y, x);
    for (int y : mb.children) assert_directed(x, y);
    for (int y : mb.undistinguished)
        if (!g.adjacent(x, y)) g.set_undirected(x, y);
}

inline void read_off_target(const PartialGraph& g, int t, LocalStructure& out) {
    out.parents = g.parents_of(t);
    out.children = g.children_of(t);
    out.undistinguished = g.undirected_neighbors(t);
}

// Queue-driven expansion: learn the target's MB, push its undistinguished
// neighbors, and keep learning their MBs until every target edge is
// directed, the queue drains, or every variable has been visited.
inline LocalStructure elcs(CiEngine& engine, int t, EmbOptions opts = {}) {
    const int n = engine.num_vars();
    const long long start = engine.read_counter();
    LocalStructure out;
    out.graph = PartialGraph(n);
    std::deque<int> que{t};
    std::vector<char> in_w(n, 0);
    int visited_count = 0;

    while (!que.empty()) {
        int x = que.front();
        que.pop_front();
        if (in_w[x]) continue;
        in_w[x] = 1;
        ++visited_count;

        MbResult mb = emb(engine, x, opts);
        ++out.mb_calls;
        if (x == t) out.mb = mb.mb();
        merge_local(out.graph, x, mb);
        for (int u : mb.undistinguished) que.push_back(u);
        meek_closure(out.graph);

        bool all_directed = true;
        for (int y = 0; y < n && all_directed; ++y)
            if (y != t && out.graph.has_undirected(t, y)) all_directed = false;
        if (all_directed) break;
        if (visited_count == n) break;
    }

    read_off_target(out.graph, t, out);
    out.total_ci = engine.read_counter() - start;
    return out;
}

// Single MB call presented in the same shape as an elcs result: the graph is
// the target's learned star.
inline LocalStructure emb_local(CiEngine& engine, int t, EmbOptions opts = {}) {
    const int n = engine.num_vars();
    const long long start = engine.read_counter();
    LocalStructure out;
    out.graph = PartialGraph(n);
    MbResult mb = emb(engine, t, opts);
    out.mb_calls = 1;
    out.mb = mb.mb();
    merge_local(out.graph, t, mb);
    read_off_target(out.graph, t, out);
    out.total_ci = engine.read_counter() - start;
    return out;
}

}  // namespace lcsl
