#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "dag.hpp"
#include "dataset.hpp"
#include "rng.hpp"
#include "util.hpp"

namespace lcsl {

// Discrete Bayesian network. cpt[v] holds one probability row per parent
// configuration; rows are indexed mixed-radix over cpt_parents[v] with the
// first listed parent most significant. cpt_parents preserves the declared
// parent order (the Dag keeps them sorted), so row indexing survives
// round trips.
struct Bn {
    std::vector<std::string> names;
    std::vector<int> arities;
    std::vector<std::vector<int>> cpt_parents;
    std::vector<std::vector<std::vector<double>>> cpt;  // [v][config][value]
    Dag dag;

    int num_vars() const { return static_cast<int>(names.size()); }

    int var_index(const std::string& name) const {
        for (int i = 0; i < num_vars(); ++i)
            if (names[i] == name) return i;
        return -1;
    }

    int num_configs(int v) const {
        int k = 1;
        for (int p : cpt_parents[v]) k *= arities[p];
        return k;
    }

    // Row index for a full assignment, first listed parent most significant.
    int config_index(int v, const std::vector<int>& assignment) const {
        int idx = 0;
        for (int p : cpt_parents[v]) idx = idx * arities[p] + assignment[p];
        return idx;
    }
};

// Builds the Dag from cpt_parents and checks shape, acyclicity and row sums.
// Rows further than 1e-6 from summing to 1 are rejected; accepted rows are
// renormalized exactly.
inline void finalize_bn(Bn& bn) {
    const int n = bn.num_vars();
    bn.dag = Dag(n);
    for (int v = 0; v < n; ++v)
        for (int p : bn.cpt_parents[v]) {
            if (p < 0 || p >= n) throw std::runtime_error("dangling parent");
            bn.dag.add_edge(p, v);
        }
    if (!bn.dag.is_acyclic()) throw std::runtime_error("not a DAG");
    for (int v = 0; v < n; ++v) {
        if (static_cast<int>(bn.cpt[v].size()) != bn.num_configs(v))
            throw std::runtime_error("invalid CPT: wrong row count for " + bn.names[v]);
        for (auto& row : bn.cpt[v]) {
            if (static_cast<int>(row.size()) != bn.arities[v])
                throw std::runtime_error("invalid CPT: wrong row length for " + bn.names[v]);
            double s = 0.0;
            for (double p : row) {
                if (p < 0.0) throw std::runtime_error("invalid CPT: negative entry in " + bn.names[v]);
                s += p;
            }
            if (std::fabs(s - 1.0) > 1e-6)
                throw std::runtime_error("invalid CPT: row of " + bn.names[v] + " sums to " +
                                         std::to_string(s));
            for (double& p : row) p /= s;
        }
    }
}

// Ancestral sampling: variables are visited in topological order within each
// row, one uniform draw per variable.
inline Dataset sample(const Bn& bn, int n, std::uint64_t seed) {
    const int p = bn.num_vars();
    std::vector<int> order = bn.dag.topo_order();
    Rng rng(seed);
    Dataset d;
    d.names = bn.names;
    d.arities = bn.arities;
    d.n = n;
    d.columns.assign(p, std::vector<int>(n));
    std::vector<int> assignment(p);
    for (int r = 0; r < n; ++r) {
        for (int v : order) {
            const auto& row = bn.cpt[v][bn.config_index(v, assignment)];
            double u = rng.uniform();
            int k = 0;
            double acc = row[0];
            while (u >= acc && k + 1 < static_cast<int>(row.size())) acc += row[++k];
            assignment[v] = k;
        }
        for (int v = 0; v < p; ++v) d.columns[v][r] = assignment[v];
    }
    return d;
}

// Random network: a uniformly shuffled variable order, up to max_parents
// predecessors chosen uniformly per variable, arities uniform in
// [arity_lo, arity_hi], and Dirichlet(1) CPT rows floored at 0.05. The floor
// is applied by reserving 0.05 per entry and distributing the remainder
// proportionally to the raw draw, so rows sum to 1 exactly.
inline Bn random_bn(int num_vars, int max_parents, int arity_lo, int arity_hi,
                    std::uint64_t seed) {
    if (arity_lo < 2 || arity_hi < arity_lo) throw std::runtime_error("bad arity range");
    if (arity_hi * 0.05 >= 1.0) throw std::runtime_error("arity too large for 0.05 floor");
    Rng rng(seed);
    std::vector<int> order(num_vars);
    for (int i = 0; i < num_vars; ++i) order[i] = i;
    rng.shuffle(order);

    Bn bn;
    bn.names.resize(num_vars);
    bn.arities.resize(num_vars);
    bn.cpt_parents.resize(num_vars);
    bn.cpt.resize(num_vars);
    for (int v = 0; v < num_vars; ++v) {
        bn.names[v] = "V" + std::to_string(v);
        bn.arities[v] = arity_lo + static_cast<int>(rng.uniform_int(
                                       static_cast<std::uint64_t>(arity_hi - arity_lo + 1)));
    }
    for (int pos = 0; pos < num_vars; ++pos) {
        int v = order[pos];
        int avail = pos;
        int k = static_cast<int>(rng.uniform_int(
            static_cast<std::uint64_t>(std::min(max_parents, avail) + 1)));
        std::vector<int> pred(order.begin(), order.begin() + pos);
        rng.shuffle(pred);
        std::vector<int> par(pred.begin(), pred.begin() + k);
        std::sort(par.begin(), par.end());
        bn.cpt_parents[v] = par;
    }
    for (int v = 0; v < num_vars; ++v) {
        int configs = 1;
        for (int p : bn.cpt_parents[v]) configs *= bn.arities[p];
        const int r = bn.arities[v];
        bn.cpt[v].assign(configs, std::vector<double>(r));
        for (auto& row : bn.cpt[v]) {
            double total = 0.0;
            std::vector<double> raw(r);
            for (int i = 0; i < r; ++i) {
                double u = rng.uniform();
                raw[i] = std::max(-std::log(1.0 - u), 1e-12);
                total += raw[i];
            }
            const double spare = 1.0 - 0.05 * r;
            for (int i = 0; i < r; ++i) row[i] = 0.05 + spare * raw[i] / total;
        }
    }
    finalize_bn(bn);
    return bn;
}

}  // namespace lcsl
