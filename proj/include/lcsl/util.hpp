#pragma once

#include <algorithm>
#include <vector>

namespace lcsl {

// Variable sets are sorted vectors of variable indices.
using VarSet = std::vector<int>;

inline bool contains(const VarSet& s, int v) {
    return std::binary_search(s.begin(), s.end(), v);
}

inline void insert_var(VarSet& s, int v) {
    auto it = std::lower_bound(s.begin(), s.end(), v);
    if (it == s.end() || *it != v) s.insert(it, v);
}

inline void erase_var(VarSet& s, int v) {
    auto it = std::lower_bound(s.begin(), s.end(), v);
    if (it != s.end() && *it == v) s.erase(it);
}

inline VarSet set_union(const VarSet& a, const VarSet& b) {
    VarSet out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline VarSet set_minus(const VarSet& a, const VarSet& b) {
    VarSet out;
    out.reserve(a.size());
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline VarSet set_intersect(const VarSet& a, const VarSet& b) {
    VarSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline bool intersects(const VarSet& a, const VarSet& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib)
            ++ia;
        else if (*ib < *ia)
            ++ib;
        else
            return true;
    }
    return false;
}

inline VarSet sorted(VarSet s) {
    std::sort(s.begin(), s.end());
    return s;
}

// Visits subsets of `pool` in ascending size; within a size class combinations
// follow the order of `pool` itself (lexicographic by position). `fn` receives
// each subset as a vector of pool elements and returns true to stop early.
// Returns true if `fn` stopped the enumeration.
template <typename Fn>
bool for_each_subset(const std::vector<int>& pool, int max_size, Fn&& fn) {
    const int m = static_cast<int>(pool.size());
    const int cap = std::min(max_size, m);
    std::vector<int> subset;
    if (cap >= 0) {
        if (fn(subset)) return true;  // empty set
    }
    std::vector<int> idx;
    for (int k = 1; k <= cap; ++k) {
        idx.resize(k);
        for (int i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            subset.clear();
            for (int i : idx) subset.push_back(pool[i]);
            if (fn(subset)) return true;
            // advance to the next k-combination of positions
            int i = k - 1;
            while (i >= 0 && idx[i] == m - k + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return false;
}

}  // namespace lcsl
