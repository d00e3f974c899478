#pragma once

#include <stdexcept>
#include <vector>

#include "util.hpp"

namespace lcsl {

// Directed acyclic graph over variables 0..n-1.
class Dag {
public:
    Dag() = default;
    explicit Dag(int n) : n_(n), parents_(n), children_(n) {}

    int num_vars() const { return n_; }

    void add_edge(int from, int to) {
        insert_var(parents_[to], from);
        insert_var(children_[from], to);
    }

    bool has_edge(int from, int to) const { return contains(children_[from], to); }
    bool adjacent(int a, int b) const { return has_edge(a, b) || has_edge(b, a); }

    const VarSet& parents(int v) const { return parents_[v]; }
    const VarSet& children(int v) const { return children_[v]; }

    VarSet pc(int v) const { return set_union(parents_[v], children_[v]); }

    // Spouses: other parents of v's children, minus v and its pc set.
    VarSet spouses(int v) const {
        VarSet sp;
        for (int c : children_[v])
            for (int p : parents_[c]) sp = set_union(sp, VarSet{p});
        VarSet excl = pc(v);
        insert_var(excl, v);
        return set_minus(sp, excl);
    }

    VarSet markov_blanket(int v) const { return set_union(pc(v), spouses(v)); }

    int num_edges() const {
        int m = 0;
        for (const auto& c : children_) m += static_cast<int>(c.size());
        return m;
    }

    // Topological order; throws if the graph has a cycle.
    std::vector<int> topo_order() const {
        std::vector<int> indeg(n_);
        for (int v = 0; v < n_; ++v) indeg[v] = static_cast<int>(parents_[v].size());
        std::vector<int> order;
        order.reserve(n_);
        std::vector<int> ready;
        for (int v = 0; v < n_; ++v)
            if (indeg[v] == 0) ready.push_back(v);
        while (!ready.empty()) {
            int v = ready.back();
            ready.pop_back();
            order.push_back(v);
            for (int c : children_[v])
                if (--indeg[c] == 0) ready.push_back(c);
        }
        if (static_cast<int>(order.size()) != n_) throw std::runtime_error("not a DAG");
        return order;
    }

    bool is_acyclic() const {
        try {
            topo_order();
        } catch (const std::runtime_error&) {
            return false;
        }
        return true;
    }

    // Flags for v and everything reachable from v along directed edges.
    std::vector<char> descendant_mask(int v) const {
        std::vector<char> mask(n_, 0);
        std::vector<int> stack{v};
        mask[v] = 1;
        while (!stack.empty()) {
            int w = stack.back();
            stack.pop_back();
            for (int c : children_[w])
                if (!mask[c]) {
                    mask[c] = 1;
                    stack.push_back(c);
                }
        }
        return mask;
    }

    std::vector<char> ancestor_mask(const VarSet& seed) const {
        std::vector<char> mask(n_, 0);
        std::vector<int> stack;
        for (int v : seed)
            if (!mask[v]) {
                mask[v] = 1;
                stack.push_back(v);
            }
        while (!stack.empty()) {
            int w = stack.back();
            stack.pop_back();
            for (int p : parents_[w])
                if (!mask[p]) {
                    mask[p] = 1;
                    stack.push_back(p);
                }
        }
        return mask;
    }

    // True iff every path between x and y is blocked by z: a non-collider on
    // the path blocks when it is in z, a collider blocks unless it or one of
    // its descendants is in z. Implemented as reachability over (node,
    // arrival-direction) states.
    bool d_separated(int x, int y, const VarSet& z) const {
        if (x == y) return false;
        std::vector<char> in_z(n_, 0);
        for (int v : z) in_z[v] = 1;
        // Colliders may be passed exactly when they are in z or have a
        // descendant in z, i.e. when they are ancestors of z (z included).
        std::vector<char> anc_z = ancestor_mask(z);
        // state: node * 2 + dir, dir 0 = arrived via an edge out of the node
        // (from a child), dir 1 = arrived via an edge into the node.
        std::vector<char> seen(static_cast<std::size_t>(n_) * 2, 0);
        std::vector<int> stack;
        auto push = [&](int v, int dir) {
            if (v == y) return true;
            std::size_t s = static_cast<std::size_t>(v) * 2 + dir;
            if (!seen[s]) {
                seen[s] = 1;
                stack.push_back(static_cast<int>(s));
            }
            return false;
        };
        if (push(x, 0)) return false;
        while (!stack.empty()) {
            int s = stack.back();
            stack.pop_back();
            int v = s / 2;
            int dir = s % 2;
            if (dir == 0) {
                if (!in_z[v]) {
                    for (int p : parents_[v])
                        if (push(p, 0)) return false;
                    for (int c : children_[v])
                        if (push(c, 1)) return false;
                }
            } else {
                if (!in_z[v]) {
                    for (int c : children_[v])
                        if (push(c, 1)) return false;
                }
                if (anc_z[v]) {
                    for (int p : parents_[v])
                        if (push(p, 0)) return false;
                }
            }
        }
        return true;
    }

private:
    int n_ = 0;
    std::vector<VarSet> parents_;
    std::vector<VarSet> children_;
};

}  // namespace lcsl
