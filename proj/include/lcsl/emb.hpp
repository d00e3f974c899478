#pragma once

#include <map>
#include <utility>

#include "ci.hpp"
#include "discovery.hpp"
#include "util.hpp"

namespace lcsl {

struct EmbOptions {
    bool use_n_structures = true;
    // Ranked spouse pruning: order SP_T{Y} members by their measured
    // dependence with Y instead of by index, so members that are easiest to
    // separate are evicted before the surviving members pay for exhaustive
    // subset searches over pools still containing them.
    bool ranked_spouses = false;
};

struct MbResult {
    VarSet parents;
    VarSet children;
    VarSet undistinguished;
    VarSet pc;
    std::map<int, VarSet> spouses;            // Y -> SP_T{Y}
    std::map<int, VarSet> candidate_spouses;  // Y -> CSP_T{Y}
    SepStore seps;
    long long ci_count = 0;

    VarSet mb() const {
        VarSet out = pc;
        for (const auto& [y, members] : spouses) out = set_union(out, members);
        return out;
    }
};

namespace detail {

// One spouse candidate x against the current neighborhood: Temp collects the
// PC members marginally dependent with x; x survives screening only if it
// stays dependent with t given all of Temp, and lands in csp[y] for each
// member y opening a path from x to t.
inline void consider_spouse_candidate(CiEngine& engine, int t, int x, const VarSet& pc,
                                      const SepStore& seps, std::map<int, VarSet>& csp) {
    VarSet temp;
    for (int y : pc)
        if (!engine.test(x, y, {}).independent) temp.push_back(y);
    if (engine.test(x, t, temp).independent) return;
    for (int y : temp) {
        VarSet z = seps.get(x);
        insert_var(z, y);
        if (!engine.test(x, t, z).independent) insert_var(csp[y], x);
    }
}

// Whether x is separable from y inside the member/neighborhood pool; a true
// parent of y never is.
inline bool spouse_separable(CiEngine& engine, int t, int x, int y, const VarSet& members,
                             const VarSet& pc) {
    VarSet pool = set_union(members, pc);
    insert_var(pool, t);
    erase_var(pool, x);
    erase_var(pool, y);
    return for_each_subset(pool, engine.max_cond_size(), [&](const VarSet& z) {
        return engine.test(x, y, z).independent;
    });
}

}  // namespace detail

// Finds spouse candidates through each PC member and prunes the false ones.
inline std::pair<std::map<int, VarSet>, std::map<int, VarSet>> recog_spouses(
    CiEngine& engine, int t, const VarSet& pc, const SepStore& seps, bool ranked = false) {
    std::map<int, VarSet> csp;
    const int n = engine.num_vars();
    for (int x = 0; x < n; ++x) {
        if (x == t || contains(pc, x)) continue;
        detail::consider_spouse_candidate(engine, t, x, pc, seps, csp);
    }

    std::map<int, VarSet> sp = csp;
    for (auto& [y, members] : sp) {
        std::vector<int> order;
        if (ranked && members.size() >= 2) {
            // Most separable (weakest dependence with y) first.
            std::vector<int> by_dependence = dependency_order(engine, y, members, {});
            order.assign(by_dependence.rbegin(), by_dependence.rend());
        } else {
            order = members;
        }
        for (int x : order)
            if (detail::spouse_separable(engine, t, x, y, members, pc)) erase_var(members, x);
    }
    return {sp, csp};
}

// Classifies PC members as parents or children.
//   (1) a member with surviving spouses sits at a V-structure -> child;
//   (2) a member whose candidate spouses include a confirmed spouse of t
//       closes an N-structure -> child;
//   (3) a marginally independent pair that turns dependent given t -> both
//       parents;
//   (4) a member marginally dependent with a parent but independent given t
//       lies downstream of t -> child.
inline void distinguish_pc(CiEngine& engine, int t, const VarSet& pc,
                           const std::map<int, VarSet>& spouses,
                           const std::map<int, VarSet>& candidate_spouses,
                           bool use_n_structures, VarSet& parents, VarSet& children,
                           VarSet& undistinguished) {
    parents.clear();
    children.clear();
    undistinguished.clear();

    for (int y : pc) {
        auto it = spouses.find(y);
        if (it != spouses.end() && !it->second.empty()) insert_var(children, y);
    }

    if (use_n_structures) {
        VarSet spouse_union;
        for (const auto& [y, members] : spouses) spouse_union = set_union(spouse_union, members);
        if (!spouse_union.empty())
            for (int x : pc) {
                if (contains(children, x)) continue;
                auto it = candidate_spouses.find(x);
                if (it != candidate_spouses.end() && intersects(it->second, spouse_union))
                    insert_var(children, x);
            }
    }

    const VarSet rest = set_minus(pc, children);
    const VarSet given_t{t};
    for (std::size_t i = 0; i < rest.size(); ++i)
        for (std::size_t j = i + 1; j < rest.size(); ++j) {
            int x = rest[i];
            int y = rest[j];
            if (engine.test(x, y, {}).independent && !engine.test(x, y, given_t).independent) {
                insert_var(parents, x);
                insert_var(parents, y);
            }
        }

    for (int x : rest) {
        if (contains(parents, x)) continue;
        for (int y : parents) {
            if (!engine.test(x, y, {}).independent && engine.test(x, y, given_t).independent) {
                insert_var(children, x);
                break;
            }
        }
    }

    undistinguished = set_minus(set_minus(pc, parents), children);
}

// Markov blanket learning with parent/child distinction: PC discovery, spouse
// recognition, a PC pruning pass against spouse-augmented conditioning pools,
// then the four classification rules.
inline MbResult emb(CiEngine& engine, int t, EmbOptions opts = {}) {
    const long long start = engine.read_counter();
    MbResult r;
    PcResult pcres = recog_pc(engine, t);
    r.pc = std::move(pcres.pc);
    r.seps = std::move(pcres.seps);

    auto [sp, csp] = recog_spouses(engine, t, r.pc, r.seps, opts.ranked_spouses);

    // Pools are built from the neighborhood as it stood entering the prune:
    // a member evicted earlier in the pass may still be needed in a later
    // member's separator, so the pool must not shrink mid-pass.
    const VarSet pc_snapshot = r.pc;
    VarSet evicted;
    for (int y : pc_snapshot) {
        VarSet pool = pc_snapshot;
        auto it = sp.find(y);
        if (it != sp.end()) pool = set_union(pool, it->second);
        erase_var(pool, y);
        bool removed = for_each_subset(pool, engine.max_cond_size(), [&](const VarSet& z) {
            if (engine.test(t, y, z).independent) {
                r.seps.set(y, z);
                return true;
            }
            return false;
        });
        if (removed) {
            erase_var(r.pc, y);
            sp.erase(y);
            insert_var(evicted, y);
        }
    }

    // A genuine spouse can ride through step 1 as a false PC member, which
    // kept it out of the candidate scan above. Each eviction unmasks such a
    // variable, so it gets the candidate treatment against the settled sets.
    for (int x : evicted) {
        std::map<int, VarSet> found;
        detail::consider_spouse_candidate(engine, t, x, r.pc, r.seps, found);
        for (const auto& [y, xs] : found)
            for (int x2 : xs) {
                insert_var(csp[y], x2);
                VarSet members = sp.count(y) ? sp[y] : VarSet{};
                insert_var(members, x2);
                if (!detail::spouse_separable(engine, t, x2, y, members, r.pc))
                    sp[y] = members;
            }
    }

    distinguish_pc(engine, t, r.pc, sp, csp, opts.use_n_structures, r.parents, r.children,
                   r.undistinguished);
    r.spouses = std::move(sp);
    r.candidate_spouses = std::move(csp);
    r.ci_count = engine.read_counter() - start;
    return r;
}

}  // namespace lcsl
