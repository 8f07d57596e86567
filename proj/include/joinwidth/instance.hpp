#pragma once

#include <algorithm>
#include <string>
#include <unordered_map>
#include <vector>

#include "joinwidth/error.hpp"
#include "joinwidth/relation.hpp"
#include "joinwidth/varset.hpp"

namespace jw {

/// A CSP instance <V, D, C>.
///
/// Variable ids index `variable_names`; value ids index `value_names`. The
/// tables are shared by induced subinstances, so `variables` may be a strict
/// subset of the id range.
struct Instance {
    std::vector<std::string> variable_names;
    std::vector<std::string> value_names;
    VarSet variables;
    std::vector<Constraint> constraints;

    /// Builds an instance over all declared variables and checks that every
    /// variable is covered and every value id is in range.
    static Instance make(std::vector<std::string> var_names, std::vector<std::string> val_names,
                         std::vector<Constraint> cons) {
        Instance inst;
        inst.variable_names = std::move(var_names);
        inst.value_names = std::move(val_names);
        std::vector<VarId> ids(inst.variable_names.size());
        for (VarId v = 0; v < ids.size(); ++v) ids[v] = v;
        inst.variables = VarSet::of(ids);
        inst.constraints = std::move(cons);
        inst.check();
        return inst;
    }

    void check() const {
        std::vector<bool> covered(variable_names.size(), false);
        for (std::size_t i = 0; i < constraints.size(); ++i) {
            const auto& c = constraints[i];
            for (auto v : c.scope) {
                if (v >= variable_names.size() || !variables.contains(v))
                    throw std::invalid_argument("constraint " + std::to_string(i) + " uses an unknown variable");
                covered[v] = true;
            }
            for (std::size_t r = 0; r < c.relation.size(); ++r)
                for (auto x : c.relation.row(r))
                    if (x >= value_names.size())
                        throw std::invalid_argument("constraint " + std::to_string(i) + " uses an unknown value");
        }
        for (auto v : variables)
            if (!covered[v])
                throw std::invalid_argument("variable " + variable_names[v] + " occurs in no constraint");
    }

    std::size_t num_constraints() const { return constraints.size(); }
    std::size_t domain_size() const { return value_names.size(); }

    VarId var_id(const std::string& name) const {
        auto it = std::find(variable_names.begin(), variable_names.end(), name);
        if (it == variable_names.end()) throw std::invalid_argument("unknown variable " + name);
        return static_cast<VarId>(it - variable_names.begin());
    }

    Value value_id(const std::string& name) const {
        auto it = std::find(value_names.begin(), value_names.end(), name);
        if (it == value_names.end()) throw std::invalid_argument("unknown value " + name);
        return static_cast<Value>(it - value_names.begin());
    }

    /// Union of the scopes of the given constraints.
    VarSet vars_of(const std::vector<std::size_t>& indices) const {
        VarSet out;
        for (auto i : indices) out |= constraints[i].vars();
        return out;
    }
};

/// Keeps t iff t[S(c')] is in project(c', S(c)) for every constraint c'.
inline Constraint prune(const Constraint& c, const Instance& inst) {
    if (c.relation.empty()) return c;
    VarSet sc = c.vars();
    struct Check {
        std::vector<std::size_t> cols;
        Constraint proj;
    };
    std::vector<Check> checks;
    for (const auto& other : inst.constraints) {
        Constraint p = project(other, sc);
        std::vector<std::size_t> cols;
        for (auto v : p.scope) cols.push_back(detail::position_of(c.scope, v));
        checks.push_back({std::move(cols), std::move(p)});
    }
    RelationBuilder out(c.scope.size());
    Tuple key;
    for (std::size_t r = 0; r < c.relation.size(); ++r) {
        auto t = c.relation.row(r);
        bool keep = true;
        for (const auto& ch : checks) {
            key.resize(ch.cols.size());
            for (std::size_t q = 0; q < ch.cols.size(); ++q) key[q] = t[ch.cols[q]];
            if (!ch.proj.relation.contains(key)) {
                keep = false;
                break;
            }
        }
        if (keep) out.add(t);
    }
    return {c.scope, std::move(out).finish()};
}

/// I[V']: every constraint projected onto `vars`, indices preserved.
inline Instance induced_subinstance(const Instance& inst, const VarSet& vars) {
    if (!vars.is_subset_of(inst.variables))
        throw std::invalid_argument("induced_subinstance: variables outside the instance");
    Instance out;
    out.variable_names = inst.variable_names;
    out.value_names = inst.value_names;
    out.variables = vars;
    out.constraints.reserve(inst.constraints.size());
    for (const auto& c : inst.constraints) out.constraints.push_back(project(c, vars));
    return out;
}

inline std::size_t max_tuples(const Instance& inst) {
    if (inst.constraints.empty()) throw DegenerateInstance("instance has no constraints");
    std::size_t m = 0;
    for (const auto& c : inst.constraints) m = std::max(m, c.size());
    return m;
}

/// Logarithm base for widths: tup(I), raised to 2 when smaller.
inline std::size_t width_base(const Instance& inst) { return std::max<std::size_t>(max_tuples(inst), 2); }

struct Hypergraph {
    VarSet vertices;
    std::vector<VarSet> edges;
};

inline Hypergraph hypergraph(const Instance& inst) {
    Hypergraph h;
    h.vertices = inst.variables;
    for (const auto& c : inst.constraints) h.edges.push_back(c.vars());
    return h;
}

}  // namespace jw
