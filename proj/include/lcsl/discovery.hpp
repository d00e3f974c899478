#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "ci.hpp"
#include "util.hpp"

namespace lcsl {

// Separating sets discovered while learning around a target. Every variable
// that was excluded from the candidate PC set has an entry.
struct SepStore {
    std::map<int, VarSet> sep;

    bool has(int v) const { return sep.count(v) != 0; }
    const VarSet& get(int v) const { return sep.at(v); }
    void set(int v, VarSet z) { sep[v] = std::move(z); }
};

struct PcResult {
    VarSet pc;  // sorted ascending
    SepStore seps;
};

// Interleaved parent/child discovery around t. Marginally dependent variables
// queue up strongest first; each admission triggers a rescan of the whole
// candidate set against subsets of the other members, smallest subsets first,
// and the first separating set found evicts the member and is recorded.
inline PcResult recog_pc(CiEngine& engine, int t) {
    const int n = engine.num_vars();
    PcResult out;

    std::vector<std::pair<double, int>> open;
    for (int x = 0; x < n; ++x) {
        if (x == t) continue;
        CiResult r = engine.test(x, t, {});
        if (r.independent)
            out.seps.set(x, {});
        else
            open.emplace_back(r.strength, x);
    }
    std::sort(open.begin(), open.end());

    std::vector<int> tpc;  // admission order
    for (auto& [strength, head] : open) {
        tpc.push_back(head);
        for (std::size_t i = 0; i < tpc.size();) {
            int w = tpc[i];
            VarSet pool;
            for (int m : tpc)
                if (m != w) pool.push_back(m);
            std::sort(pool.begin(), pool.end());
            bool removed = for_each_subset(pool, engine.max_cond_size(), [&](const VarSet& z) {
                if (engine.test(w, t, z).independent) {
                    out.seps.set(w, z);
                    return true;
                }
                return false;
            });
            if (removed)
                tpc.erase(tpc.begin() + static_cast<long>(i));
            else
                ++i;
        }
    }
    out.pc = sorted(VarSet(tpc.begin(), tpc.end()));
    return out;
}

}  // namespace lcsl
