#pragma once

#include <string>

#include <json.hpp>

#include "dicut/balanced.hpp"
#include "dicut/digraph.hpp"
#include "dicut/fraction.hpp"
#include "dicut/sampling.hpp"
#include "dicut/separators.hpp"
#include "dicut/skew.hpp"
#include "dicut/sparsifier.hpp"
#include "dicut/types.hpp"

namespace dicut {

using json = nlohmann::json;

inline json graph_to_json(const DiGraph& g) {
    json arcs = json::array();
    for (const Arc& a : g.arcs()) arcs.push_back(json::array({a.tail, a.head}));
    return json{{"n", g.n()}, {"arcs", std::move(arcs)}};
}

inline DiGraph graph_from_json(const json& j) {
    try {
        int n = j.at("n").get<int>();
        std::vector<Arc> arcs;
        for (const auto& row : j.at("arcs")) {
            if (!row.is_array() || row.size() != 2) throw ParseError("arc entry must be [tail, head]");
            arcs.push_back({row[0].get<int>(), row[1].get<int>()});
        }
        return DiGraph(n, std::move(arcs));
    } catch (const json::exception& e) {
        throw ParseError(std::string("graph JSON: ") + e.what());
    }
}

inline json vset_to_json(const VertexSet& s) {
    json out = json::array();
    for (VertexId v : s) out.push_back(v);
    return out;
}

inline json witness_to_json(const CheckWitness& w) {
    json out{{"f", vset_to_json(w.f)}, {"kind", w.kind}, {"set", vset_to_json(w.set_a)},
             {"measured", to_string(w.measured)}};
    if (!w.set_b.empty() || w.kind == "partition") out["set_b"] = vset_to_json(w.set_b);
    return out;
}

inline json report_to_json(const CheckReport& r, const std::string& schema) {
    json out{{"schema", schema}, {"verdict", r.pass ? "pass" : "fail"}};
    out["witness"] = r.witness ? witness_to_json(*r.witness) : json(nullptr);
    return out;
}

inline json separator_list_to_json(const std::vector<VertexSet>& seps) {
    json out = json::array();
    for (const VertexSet& x : seps) out.push_back(vset_to_json(x));
    return out;
}

inline json skew_instance_to_json(const SkewInstance& inst) {
    json pairs = json::array();
    for (const auto& [s, t] : inst.pairs) pairs.push_back(json::array({s, t}));
    return json{{"graph", graph_to_json(inst.g)},
                {"pairs", std::move(pairs)},
                {"k", inst.k},
                {"mode", inst.mode == DelMode::vertex ? "vertex" : "arc"}};
}

inline SkewInstance skew_instance_from_json(const json& j) {
    try {
        SkewInstance inst;
        inst.g = graph_from_json(j.at("graph"));
        for (const auto& row : j.at("pairs")) {
            if (!row.is_array() || row.size() != 2) throw ParseError("pair entry must be [s, t]");
            inst.pairs.emplace_back(row[0].get<int>(), row[1].get<int>());
        }
        inst.k = j.at("k").get<int>();
        std::string mode = j.at("mode").get<std::string>();
        if (mode == "vertex")
            inst.mode = DelMode::vertex;
        else if (mode == "arc")
            inst.mode = DelMode::arc;
        else
            throw ParseError("mode must be \"vertex\" or \"arc\"");
        return inst;
    } catch (const json::exception& e) {
        throw ParseError(std::string("skew instance JSON: ") + e.what());
    }
}

}  // namespace dicut
