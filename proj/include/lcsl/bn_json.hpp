#pragma once

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "bn.hpp"

namespace lcsl {

// Network file schema:
// {"variables": [{"name", "arity", "parents": [names], "cpt": [[...], ...]}]}
// CPT rows follow mixed-radix order over the listed parents, first parent most
// significant.
inline Bn load_bn(std::istream& in) {
    nlohmann::json j;
    in >> j;
    if (!j.contains("variables") || !j["variables"].is_array())
        throw std::runtime_error("network: missing variables array");
    Bn bn;
    for (const auto& var : j["variables"]) {
        bn.names.push_back(var.at("name").get<std::string>());
        bn.arities.push_back(var.at("arity").get<int>());
        if (bn.arities.back() < 1) throw std::runtime_error("network: bad arity");
    }
    for (const auto& var : j["variables"]) {
        std::vector<int> parents;
        for (const auto& pname : var.at("parents")) {
            int p = bn.var_index(pname.get<std::string>());
            if (p < 0)
                throw std::runtime_error("network: dangling parent " +
                                         pname.get<std::string>());
            parents.push_back(p);
        }
        bn.cpt_parents.push_back(parents);
        std::vector<std::vector<double>> rows;
        for (const auto& row : var.at("cpt")) rows.push_back(row.get<std::vector<double>>());
        bn.cpt.push_back(rows);
    }
    finalize_bn(bn);
    return bn;
}

inline Bn load_bn(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    try {
        return load_bn(in);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("network: " + std::string(e.what()));
    }
}

inline void save_bn(const Bn& bn, std::ostream& out) {
    nlohmann::ordered_json j;
    j["variables"] = nlohmann::ordered_json::array();
    for (int v = 0; v < bn.num_vars(); ++v) {
        nlohmann::ordered_json var;
        var["name"] = bn.names[v];
        var["arity"] = bn.arities[v];
        auto parents = nlohmann::ordered_json::array();
        for (int p : bn.cpt_parents[v]) parents.push_back(bn.names[p]);
        var["parents"] = parents;
        var["cpt"] = bn.cpt[v];
        j["variables"].push_back(var);
    }
    out << j.dump(2) << '\n';
}

inline void save_bn(const Bn& bn, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    save_bn(bn, out);
}

}  // namespace lcsl
