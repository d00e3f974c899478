#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include <lcsl/bn.hpp>
#include <lcsl/rng.hpp>

namespace fixtures {

// Binary network from parent lists and a success probability that depends on
// the number of active parents.
inline lcsl::Bn build_binary_bn(std::vector<std::string> names,
                                std::vector<std::vector<int>> parents,
                                const std::function<double(int, int)>& p_one) {
    lcsl::Bn bn;
    bn.names = std::move(names);
    bn.arities.assign(bn.names.size(), 2);
    bn.cpt_parents = std::move(parents);
    bn.cpt.resize(bn.num_vars());
    for (int v = 0; v < bn.num_vars(); ++v) {
        const int k = static_cast<int>(bn.cpt_parents[v].size());
        const int configs = 1 << k;
        bn.cpt[v].assign(configs, std::vector<double>(2));
        for (int cfg = 0; cfg < configs; ++cfg) {
            int sum = 0;
            for (int b = 0; b < k; ++b) sum += (cfg >> b) & 1;
            double p = p_one(v, sum);
            bn.cpt[v][cfg] = {1.0 - p, p};
        }
    }
    lcsl::finalize_bn(bn);
    return bn;
}

// 13-variable network whose d-separation facts drive the golden traces:
// E->T, J->T, T->A, T->B, T->L, T->K, C->A, A->B, E->C, D->K, D->I, K->I,
// X->E, F->J, H->F. Indices follow alphabetical order A..L, T, X.
inline lcsl::Bn golden_net13() {
    const std::vector<std::string> names = {"A", "B", "C", "D", "E", "F", "H",
                                            "I", "J", "K", "L", "T", "X"};
    auto id = [&names](const std::string& s) {
        for (int i = 0; i < static_cast<int>(names.size()); ++i)
            if (names[i] == s) return i;
        return -1;
    };
    std::vector<std::vector<int>> parents(names.size());
    parents[id("T")] = {id("E"), id("J")};
    parents[id("A")] = {id("T"), id("C")};
    parents[id("B")] = {id("T"), id("A")};
    parents[id("L")] = {id("T")};
    parents[id("K")] = {id("T"), id("D")};
    parents[id("C")] = {id("E")};
    parents[id("E")] = {id("X")};
    parents[id("I")] = {id("D"), id("K")};
    parents[id("J")] = {id("F")};
    parents[id("F")] = {id("H")};
    const int D = id("D"), H = id("H"), X = id("X");
    auto p = [&parents, D, H, X](int v, int sum) -> double {
        const int k = static_cast<int>(parents[v].size());
        if (k == 0) {
            if (v == D) return 0.4;
            if (v == H) return 0.5;
            if (v == X) return 0.6;
            return 0.5;
        }
        if (k == 1) return 0.2 + 0.6 * sum;
        return 0.1 + 0.35 * sum;
    };
    return build_binary_bn(names, parents, p);
}

// golden_net13 plus Y with Y->T, X->Y, F->Y.
inline lcsl::Bn golden_net14() {
    const std::vector<std::string> names = {"A", "B", "C", "D", "E", "F", "H",
                                            "I", "J", "K", "L", "T", "X", "Y"};
    auto id = [&names](const std::string& s) {
        for (int i = 0; i < static_cast<int>(names.size()); ++i)
            if (names[i] == s) return i;
        return -1;
    };
    std::vector<std::vector<int>> parents(names.size());
    parents[id("T")] = {id("E"), id("J"), id("Y")};
    parents[id("A")] = {id("T"), id("C")};
    parents[id("B")] = {id("T"), id("A")};
    parents[id("L")] = {id("T")};
    parents[id("K")] = {id("T"), id("D")};
    parents[id("C")] = {id("E")};
    parents[id("E")] = {id("X")};
    parents[id("I")] = {id("D"), id("K")};
    parents[id("J")] = {id("F")};
    parents[id("F")] = {id("H")};
    parents[id("Y")] = {id("X"), id("F")};
    const int D = id("D"), H = id("H"), X = id("X");
    auto p = [&parents, D, H, X](int v, int sum) -> double {
        const int k = static_cast<int>(parents[v].size());
        if (k == 0) {
            if (v == D) return 0.4;
            if (v == H) return 0.5;
            if (v == X) return 0.6;
            return 0.5;
        }
        if (k == 1) return 0.2 + 0.6 * sum;
        if (k == 2) return 0.1 + 0.35 * sum;
        return 0.1 + (0.8 / 3.0) * sum;
    };
    return build_binary_bn(names, parents, p);
}

struct FamilyNet {
    lcsl::Bn bn;
    std::map<std::string, int> role;  // role name -> variable index
};

namespace detail {

inline FamilyNet build_family(const std::vector<std::string>& roles,
                              const std::map<std::string, std::vector<std::string>>& role_parents,
                              const std::vector<std::string>& root_roles, std::uint64_t seed) {
    lcsl::Rng rng(seed);
    const int n = static_cast<int>(roles.size());
    std::vector<int> index_of_role(n);
    for (int i = 0; i < n; ++i) index_of_role[i] = i;
    rng.shuffle(index_of_role);

    std::map<std::string, int> role_index;
    for (int r = 0; r < n; ++r) role_index[roles[r]] = index_of_role[r];

    std::map<std::string, double> root_p;
    for (const auto& r : root_roles) root_p[r] = 0.4 + 0.2 * rng.uniform();

    std::vector<std::string> names(n);
    for (int i = 0; i < n; ++i) names[i] = "V" + std::to_string(i);
    std::vector<std::vector<int>> parents(n);
    std::vector<double> root_prob(n, 0.5);
    for (const auto& role : roles) {
        const int v = role_index[role];
        auto it = role_parents.find(role);
        if (it != role_parents.end())
            for (const auto& p : it->second) parents[v].push_back(role_index.at(p));
        auto rp = root_p.find(role);
        if (rp != root_p.end()) root_prob[v] = rp->second;
    }
    auto p = [&parents, &root_prob](int v, int sum) -> double {
        const int k = static_cast<int>(parents[v].size());
        if (k == 0) return root_prob[v];
        if (k == 1) return 0.15 + 0.7 * sum;
        return 0.1 + 0.4 * sum;
    };
    FamilyNet out;
    out.bn = build_binary_bn(names, parents, p);
    out.role = std::move(role_index);
    return out;
}

}  // namespace detail

// Two four-variable motifs around a shared target: P->T, P->C, C->A, T->A,
// A->B, T->B. The T->B edges are orientable locally only through the spouse
// candidate C, which makes the ablation without that rule walk the queue.
inline FamilyNet n_rich_bn(std::uint64_t seed) {
    const std::vector<std::string> roles = {"T",  "P1", "C1", "A1", "B1", "P2",
                                            "C2", "A2", "B2", "N1", "N2"};
    const std::map<std::string, std::vector<std::string>> parents = {
        {"T", {"P1", "P2"}}, {"P1", {"N1"}}, {"C1", {"P1"}}, {"A1", {"T", "C1"}},
        {"B1", {"T", "A1"}}, {"C2", {"P2"}}, {"A2", {"T", "C2"}}, {"B2", {"T", "A2"}},
        {"N2", {"C2"}}};
    return detail::build_family(roles, parents, {"P2", "N1"}, seed);
}

// Children of T with a true spouse S whose own parents R land in the
// candidate-spouse sets and are separable by {S}: pruning order decides how
// large the conditioning pools get.
inline FamilyNet spouse_rich_bn(std::uint64_t seed) {
    const std::vector<std::string> roles = {"T",  "P1",  "P2",  "B1", "S1", "Ra1",
                                            "Rb1", "B2", "S2", "Ra2", "Rb2"};
    const std::map<std::string, std::vector<std::string>> parents = {
        {"T", {"P1", "P2"}},   {"B1", {"T", "S1"}},   {"S1", {"Ra1", "Rb1"}},
        {"B2", {"T", "S2"}},   {"S2", {"Ra2", "Rb2"}}};
    return detail::build_family(roles, parents, {"P1", "P2", "Ra1", "Rb1", "Ra2", "Rb2"},
                                seed);
}

// T->A->B->C chain for ranking tests.
inline lcsl::Bn chain4_bn() {
    const std::vector<std::string> names = {"T", "A", "B", "C"};
    std::vector<std::vector<int>> parents = {{}, {0}, {1}, {2}};
    auto p = [](int v, int sum) -> double { return v == 0 ? 0.5 : 0.2 + 0.6 * sum; };
    return build_binary_bn(names, parents, p);
}

}  // namespace fixtures
