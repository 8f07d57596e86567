#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "joinwidth/decomposition.hpp"
#include "joinwidth/error.hpp"
#include "joinwidth/instance.hpp"
#include "joinwidth/oracle.hpp"
#include "joinwidth/width.hpp"

namespace jw {

/// True iff project(c, W ∪ {v}) has no two tuples that differ only at v.
inline bool is_functional_on(const Constraint& c, const VarSet& w, VarId v) {
    std::size_t vcol = detail::position_of(c.scope, v);
    if (vcol == c.scope.size()) throw std::invalid_argument("is_functional_on: variable not in scope");
    std::vector<std::size_t> key_cols;
    for (std::size_t i = 0; i < c.scope.size(); ++i)
        if (i != vcol && w.contains(c.scope[i])) key_cols.push_back(i);
    std::map<Tuple, Value> seen;
    Tuple key(key_cols.size());
    for (std::size_t r = 0; r < c.relation.size(); ++r) {
        auto t = c.relation.row(r);
        for (std::size_t q = 0; q < key_cols.size(); ++q) key[q] = t[key_cols[q]];
        auto [it, fresh] = seen.emplace(key, t[vcol]);
        if (!fresh && it->second != t[vcol]) return false;
    }
    return true;
}

struct RootSetWitness {
    VarSet roots;
    std::vector<VarId> order;  // roots first
    std::map<VarId, std::size_t> certifier;
};

/// Greedy witness search with Q placed first: repeatedly append the
/// lowest-id variable that some constraint (lowest index wins) is functional
/// on given the current prefix.
inline std::optional<RootSetWitness> find_root_set_witness(const Instance& inst, const VarSet& q) {
    if (!q.is_subset_of(inst.variables)) throw std::invalid_argument("root set outside the instance");
    RootSetWitness w;
    w.roots = q;
    w.order.assign(q.begin(), q.end());
    VarSet prefix = q;
    VarSet rest = inst.variables - q;
    while (!rest.empty()) {
        bool progressed = false;
        for (auto v : rest) {
            for (std::size_t c = 0; c < inst.num_constraints(); ++c) {
                const auto& con = inst.constraints[c];
                if (detail::position_of(con.scope, v) == con.scope.size()) continue;
                if (is_functional_on(con, prefix, v)) {
                    w.order.push_back(v);
                    w.certifier[v] = c;
                    prefix.insert(v);
                    progressed = true;
                    break;
                }
            }
            if (progressed) break;
        }
        if (!progressed) return std::nullopt;
        rest = inst.variables - prefix;
    }
    return w;
}

struct ConstraintRootSet {
    std::vector<std::size_t> roots;
    RootSetWitness witness;
    JoinDecomposition decomposition;
};

namespace detail {

// Calls f on each k-subset of {0..n-1} in lexicographic order until f
// returns true.
template <class F>
bool for_each_subset(std::size_t n, std::size_t k, F&& f) {
    if (k > n) return false;
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    while (true) {
        if (f(idx)) return true;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return false;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace detail

/// Searches k-element constraint sets P whose scope union is a root set.
/// The decomposition introduces P first, then the remaining constraints by
/// the latest witness position among their variables.
inline std::optional<ConstraintRootSet> find_constraint_root_set(const Instance& inst, std::size_t k) {
    const std::size_t m = inst.num_constraints();
    if (m == 0 || k == 0) return std::nullopt;
    k = std::min(k, m);
    std::optional<ConstraintRootSet> found;
    detail::for_each_subset(m, k, [&](const std::vector<std::size_t>& p) {
        auto wit = find_root_set_witness(inst, inst.vars_of(p));
        if (!wit) return false;
        std::vector<std::size_t> rank(inst.variable_names.size(), 0);
        for (std::size_t i = 0; i < wit->order.size(); ++i) rank[wit->order[i]] = i;
        std::vector<bool> in_p(m, false);
        for (auto c : p) in_p[c] = true;
        std::vector<std::pair<std::size_t, std::size_t>> tail;
        for (std::size_t c = 0; c < m; ++c) {
            if (in_p[c]) continue;
            std::size_t last = 0;
            for (auto v : inst.constraints[c].scope) last = std::max(last, rank[v]);
            tail.push_back({last, c});
        }
        std::sort(tail.begin(), tail.end());
        std::vector<std::size_t> order = p;
        for (auto& [_, c] : tail) order.push_back(c);
        found = ConstraintRootSet{p, std::move(*wit), linear_from_order(order)};
        return true;
    });
    return found;
}

/// Every induced subinstance has at most base^k solutions.
inline bool is_hereditarily_k_bounded(const Instance& inst, const Width& k, std::size_t limit = 16) {
    const auto& vars = inst.variables.ids();
    const std::size_t n = vars.size();
    if (n > limit) throw LimitExceeded("variable subset limit", n, limit);
    const std::uint64_t cap = tuple_cap(width_base(inst), k);
    for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << n); ++sub) {
        std::vector<VarId> ids;
        for (std::size_t i = 0; i < n; ++i)
            if (sub >> i & 1) ids.push_back(vars[i]);
        if (enumerate_solutions(induced_subinstance(inst, VarSet::of(ids))).size() > cap) return false;
    }
    return true;
}

/// Fix(c) per constraint index: a set of at most k constraints containing c
/// whose join has at most one tuple.
using FixingAssignment = std::vector<std::vector<std::size_t>>;

/// Smallest fixing set per constraint, lexicographically first among equal
/// sizes. The join stops early once it is empty.
inline std::optional<FixingAssignment> find_fixing_sets(const Instance& inst, std::size_t k) {
    const std::size_t m = inst.num_constraints();
    FixingAssignment fix(m);
    for (std::size_t c = 0; c < m; ++c) {
        std::vector<std::size_t> others;
        for (std::size_t o = 0; o < m; ++o)
            if (o != c) others.push_back(o);
        bool ok = false;
        for (std::size_t s = 0; s < k && !ok; ++s) {
            ok = detail::for_each_subset(others.size(), s, [&](const std::vector<std::size_t>& pick) {
                Constraint j = inst.constraints[c];
                for (auto i : pick) {
                    if (j.empty()) break;
                    j = natural_join(j, inst.constraints[others[i]]);
                }
                if (j.size() > 1) return false;
                std::vector<std::size_t> set{c};
                for (auto i : pick) set.push_back(others[i]);
                std::sort(set.begin(), set.end());
                fix[c] = std::move(set);
                return true;
            });
        }
        if (!ok) return std::nullopt;
    }
    return fix;
}

/// Linear decomposition introducing Fix(c0), then the members of Fix(c1)
/// not yet placed, and so on.
inline JoinDecomposition decomposition_from_fixing_sets(const Instance& inst, const FixingAssignment& fix) {
    const std::size_t m = inst.num_constraints();
    if (fix.size() != m) throw std::invalid_argument("incomplete fixing assignment");
    std::vector<bool> placed(m, false);
    std::vector<std::size_t> order;
    for (std::size_t c = 0; c < m; ++c) {
        if (std::find(fix[c].begin(), fix[c].end(), c) == fix[c].end())
            throw std::invalid_argument("incomplete fixing assignment");
        for (auto o : fix[c]) {
            if (o >= m) throw std::invalid_argument("fixing set names an unknown constraint");
            if (!placed[o]) {
                placed[o] = true;
                order.push_back(o);
            }
        }
    }
    return linear_from_order(order);
}

}  // namespace jw
