#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "joinwidth/decomposition.hpp"
#include "joinwidth/error.hpp"
#include "joinwidth/generators.hpp"
#include "joinwidth/instance.hpp"

namespace jw {

using Json = nlohmann::ordered_json;

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError(path + ": cannot write file");
    out << text;
}

namespace detail {

inline Json parse_json(const std::string& text, const std::string& where) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(where + ": malformed JSON: " + e.what());
    }
}

inline std::string name_of(const Json& j, const std::string& where) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return j.dump();
    throw ParseError(where + ": expected a name (string or integer)");
}

inline const Json& field(const Json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) throw ParseError(where + ": missing \"" + key + "\"");
    return obj.at(key);
}

inline std::map<std::string, std::uint32_t> name_table(const Json& arr, const std::string& where,
                                                       std::vector<std::string>& names) {
    if (!arr.is_array()) throw ParseError(where + ": expected an array");
    std::map<std::string, std::uint32_t> table;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        std::string n = name_of(arr[i], where + "[" + std::to_string(i) + "]");
        if (!table.emplace(n, static_cast<std::uint32_t>(names.size())).second)
            throw ParseError(where + "[" + std::to_string(i) + "]: duplicate name \"" + n + "\"");
        names.push_back(n);
    }
    return table;
}

}  // namespace detail

/// Instance from JSON text: {"variables": [...], "domain": [...],
/// "constraints": [{"scope": [...], "tuples": [[...], ...]}, ...]}.
inline Instance parse_instance_json(const std::string& text, const std::string& where = "instance") {
    Json j = detail::parse_json(text, where);
    std::vector<std::string> vars, vals;
    auto var_ids = detail::name_table(detail::field(j, "variables", where), where + ".variables", vars);
    auto val_ids = detail::name_table(detail::field(j, "domain", where), where + ".domain", vals);
    const Json& cons = detail::field(j, "constraints", where);
    if (!cons.is_array()) throw ParseError(where + ".constraints: expected an array");
    std::vector<Constraint> out;
    for (std::size_t ci = 0; ci < cons.size(); ++ci) {
        std::string cw = where + ".constraints[" + std::to_string(ci) + "] (constraint " + std::to_string(ci) + ")";
        const Json& sc = detail::field(cons[ci], "scope", cw);
        if (!sc.is_array()) throw ParseError(cw + ".scope: expected an array");
        Scope scope;
        for (std::size_t k = 0; k < sc.size(); ++k) {
            std::string n = detail::name_of(sc[k], cw + ".scope");
            auto it = var_ids.find(n);
            if (it == var_ids.end()) throw ParseError(cw + ".scope: undeclared variable \"" + n + "\"");
            if (std::find(scope.begin(), scope.end(), it->second) != scope.end())
                throw ParseError(cw + ".scope: variable \"" + n + "\" repeated");
            scope.push_back(it->second);
        }
        const Json& tu = detail::field(cons[ci], "tuples", cw);
        if (!tu.is_array()) throw ParseError(cw + ".tuples: expected an array");
        RelationBuilder rb(scope.size());
        Tuple t;
        for (std::size_t r = 0; r < tu.size(); ++r) {
            std::string tw = cw + ".tuples[" + std::to_string(r) + "]";
            if (!tu[r].is_array()) throw ParseError(tw + ": expected an array");
            if (tu[r].size() != scope.size())
                throw ParseError(tw + ": expected " + std::to_string(scope.size()) + " values, got " +
                                 std::to_string(tu[r].size()));
            t.clear();
            for (const auto& x : tu[r]) {
                std::string n = detail::name_of(x, tw);
                auto it = val_ids.find(n);
                if (it == val_ids.end()) throw ParseError(tw + ": undeclared value \"" + n + "\"");
                t.push_back(it->second);
            }
            rb.add(t);
        }
        out.emplace_back(std::move(scope), std::move(rb).finish());
    }
    try {
        return Instance::make(std::move(vars), std::move(vals), std::move(out));
    } catch (const std::invalid_argument& e) {
        throw ParseError(where + ": " + e.what());
    }
}

inline Instance parse_instance(const std::string& path) { return parse_instance_json(read_file(path), path); }

inline Json instance_to_json(const Instance& inst) {
    Json j;
    Json vars = Json::array();
    for (auto v : inst.variables) vars.push_back(inst.variable_names[v]);
    j["variables"] = std::move(vars);
    j["domain"] = inst.value_names;
    Json cons = Json::array();
    for (const auto& c : inst.constraints) {
        Json cj;
        Json sc = Json::array();
        for (auto v : c.scope) sc.push_back(inst.variable_names[v]);
        cj["scope"] = std::move(sc);
        Json tuples = Json::array();
        for (std::size_t r = 0; r < c.relation.size(); ++r) {
            Json t = Json::array();
            for (auto x : c.relation.row(r)) t.push_back(inst.value_names[x]);
            tuples.push_back(std::move(t));
        }
        cj["tuples"] = std::move(tuples);
        cons.push_back(std::move(cj));
    }
    j["constraints"] = std::move(cons);
    return j;
}

/// Compact JSON, fixed key order, tuples in canonical order, trailing newline.
inline std::string serialize_instance(const Instance& inst) { return instance_to_json(inst).dump() + "\n"; }

inline void serialize_instance(const Instance& inst, const std::string& path) {
    write_file(path, serialize_instance(inst));
}

namespace detail {

inline JoinDecomposition decomposition_from(const Json& j, const std::string& where) {
    if (!j.is_object()) throw ParseError(where + ": expected an object");
    if (j.contains("leaf")) {
        if (!j.at("leaf").is_number_unsigned()) throw ParseError(where + ".leaf: expected a constraint index");
        return JoinDecomposition::leaf(j.at("leaf").get<std::size_t>());
    }
    if (j.contains("left") && j.contains("right"))
        return JoinDecomposition::join(decomposition_from(j.at("left"), where + ".left"),
                                       decomposition_from(j.at("right"), where + ".right"));
    throw ParseError(where + ": expected {\"leaf\": i} or {\"left\": ..., \"right\": ...}");
}

inline Json decomposition_node_json(const JoinDecomposition& d, std::size_t j) {
    const auto& n = d.node(j);
    Json out;
    if (n.constraint) {
        out["leaf"] = *n.constraint;
    } else {
        if (n.children.size() != 2) throw InvalidDecomposition("not binary");
        out["left"] = decomposition_node_json(d, n.children[0]);
        out["right"] = decomposition_node_json(d, n.children[1]);
    }
    return out;
}

}  // namespace detail

inline JoinDecomposition parse_decomposition_json(const std::string& text, const std::string& where = "decomposition") {
    return detail::decomposition_from(detail::parse_json(text, where), where);
}

inline JoinDecomposition parse_decomposition(const std::string& path) {
    return parse_decomposition_json(read_file(path), path);
}

inline std::string serialize_decomposition(const JoinDecomposition& d) {
    return detail::decomposition_node_json(d, d.root()).dump() + "\n";
}

/// Graph from JSON: [[u, v], ...] or {"vertices": n, "edges": [[u, v], ...]}
/// with 0-based integer vertices.
inline Graph parse_graph_json(const std::string& text, const std::string& where = "graph") {
    Json j = detail::parse_json(text, where);
    Graph g;
    const Json* edges = &j;
    if (j.is_object()) {
        edges = &detail::field(j, "edges", where);
        if (j.contains("vertices")) {
            if (!j.at("vertices").is_number_unsigned()) throw ParseError(where + ".vertices: expected a count");
            g.n = j.at("vertices").get<std::size_t>();
        }
    }
    if (!edges->is_array()) throw ParseError(where + ": expected an edge array");
    std::size_t top = 0;
    for (std::size_t i = 0; i < edges->size(); ++i) {
        const Json& e = (*edges)[i];
        std::string ew = where + ".edges[" + std::to_string(i) + "]";
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned())
            throw ParseError(ew + ": expected [u, v] with non-negative integers");
        auto u = e[0].get<std::size_t>(), v = e[1].get<std::size_t>();
        if (u == v) throw ParseError(ew + ": loop");
        g.edges.push_back({u, v});
        top = std::max({top, u + 1, v + 1});
    }
    if (g.n == 0) g.n = top;
    if (g.n < top) throw ParseError(where + ": edge endpoint beyond the vertex count");
    return g;
}

inline Graph parse_graph(const std::string& path) { return parse_graph_json(read_file(path), path); }

struct BenchRow {
    std::string instance;
    std::string family;
    std::string engine;
    std::string verdict;
    std::optional<double> width;  // empty when the engine builds no decomposition
    double wall_seconds = 0.0;
    std::size_t peak_relation_size = 0;
};

inline std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::string out = "instance,family,engine,verdict,width,wall_seconds,peak_relation_size\n";
    char buf[64];
    for (const auto& r : rows) {
        out += r.instance + "," + r.family + "," + r.engine + "," + r.verdict + ",";
        if (r.width) {
            std::snprintf(buf, sizeof buf, "%.3f", *r.width);
            out += buf;
        }
        std::snprintf(buf, sizeof buf, ",%.6f,", r.wall_seconds);
        out += buf;
        out += std::to_string(r.peak_relation_size) + "\n";
    }
    return out;
}

}  // namespace jw
