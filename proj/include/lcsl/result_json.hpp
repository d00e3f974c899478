#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "elcs.hpp"
#include "util.hpp"

namespace lcsl {

// One serialized learning result:
// {"target", "parents", "children", "undistinguished", "mb",
//  "edges": [{"from","to","directed"}], "ci_tests", "mb_calls", "elapsed_ms"}
struct LearnRecord {
    std::string target;
    std::vector<std::string> parents;
    std::vector<std::string> children;
    std::vector<std::string> undistinguished;
    std::vector<std::string> mb;
    struct Edge {
        std::string from;
        std::string to;
        bool directed = false;
    };
    std::vector<Edge> edges;
    long long ci_tests = 0;
    int mb_calls = 0;
    double elapsed_ms = 0.0;
};

inline LearnRecord make_record(const LocalStructure& ls, int t,
                               const std::vector<std::string>& names, double elapsed_ms) {
    LearnRecord rec;
    rec.target = names[t];
    auto map_names = [&names](const VarSet& s) {
        std::vector<std::string> out;
        out.reserve(s.size());
        for (int v : s) out.push_back(names[v]);
        return out;
    };
    rec.parents = map_names(ls.parents);
    rec.children = map_names(ls.children);
    rec.undistinguished = map_names(ls.undistinguished);
    rec.mb = map_names(ls.mb);
    for (const auto& e : ls.graph.edges())
        rec.edges.push_back({names[e.from], names[e.to], e.directed});
    rec.ci_tests = ls.total_ci;
    rec.mb_calls = ls.mb_calls;
    rec.elapsed_ms = elapsed_ms;
    return rec;
}

inline nlohmann::ordered_json record_to_json(const LearnRecord& rec) {
    nlohmann::ordered_json j;
    j["target"] = rec.target;
    j["parents"] = rec.parents;
    j["children"] = rec.children;
    j["undistinguished"] = rec.undistinguished;
    j["mb"] = rec.mb;
    auto edges = nlohmann::ordered_json::array();
    for (const auto& e : rec.edges)
        edges.push_back({{"from", e.from}, {"to", e.to}, {"directed", e.directed}});
    j["edges"] = edges;
    j["ci_tests"] = rec.ci_tests;
    j["mb_calls"] = rec.mb_calls;
    j["elapsed_ms"] = rec.elapsed_ms;
    return j;
}

inline LearnRecord record_from_json(const nlohmann::json& j) {
    LearnRecord rec;
    rec.target = j.at("target").get<std::string>();
    rec.parents = j.at("parents").get<std::vector<std::string>>();
    rec.children = j.at("children").get<std::vector<std::string>>();
    rec.undistinguished = j.at("undistinguished").get<std::vector<std::string>>();
    if (j.contains("mb")) {
        rec.mb = j.at("mb").get<std::vector<std::string>>();
    } else {
        rec.mb = rec.parents;
        rec.mb.insert(rec.mb.end(), rec.children.begin(), rec.children.end());
        rec.mb.insert(rec.mb.end(), rec.undistinguished.begin(), rec.undistinguished.end());
    }
    for (const auto& e : j.at("edges"))
        rec.edges.push_back({e.at("from").get<std::string>(), e.at("to").get<std::string>(),
                             e.at("directed").get<bool>()});
    rec.ci_tests = j.value("ci_tests", 0LL);
    rec.mb_calls = j.value("mb_calls", 0);
    rec.elapsed_ms = j.value("elapsed_ms", 0.0);
    return rec;
}

}  // namespace lcsl
