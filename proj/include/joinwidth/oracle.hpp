#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "joinwidth/decomposition.hpp"
#include "joinwidth/error.hpp"
#include "joinwidth/instance.hpp"

// Brute-force reference implementations. Obviously correct, deliberately slow.
namespace jw {

/// All solutions over the instance's variables in increasing id order.
inline Constraint enumerate_solutions(const Instance& inst, std::size_t budget = 10'000'000) {
    const auto& vars = inst.variables.ids();
    const std::size_t n = vars.size();
    const std::size_t d = inst.domain_size();

    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (d != 0 && total > std::numeric_limits<std::size_t>::max() / d) {
            total = std::numeric_limits<std::size_t>::max();
            break;
        }
        total *= d;
    }
    if (n > 0 && total > budget) throw LimitExceeded("assignment budget", total, budget);

    std::vector<std::size_t> pos(inst.variable_names.size(), 0);
    for (std::size_t i = 0; i < n; ++i) pos[vars[i]] = i;

    // Each constraint is checked as soon as its last variable is assigned.
    std::vector<std::vector<std::size_t>> due(n + 1);
    for (std::size_t c = 0; c < inst.num_constraints(); ++c) {
        std::size_t last = 0;
        for (auto v : inst.constraints[c].scope) last = std::max(last, pos[v] + 1);
        due[last].push_back(c);
    }

    RelationBuilder out(n);
    Tuple assign(n, 0), probe;
    auto satisfied = [&](std::size_t level) {
        for (auto c : due[level]) {
            const auto& con = inst.constraints[c];
            probe.resize(con.scope.size());
            for (std::size_t q = 0; q < con.scope.size(); ++q) probe[q] = assign[pos[con.scope[q]]];
            if (!con.relation.contains(probe)) return false;
        }
        return true;
    };
    if (!satisfied(0)) return {Scope(vars.begin(), vars.end()), std::move(out).finish()};
    if (n == 0) {
        out.add(assign);
        return {Scope{}, std::move(out).finish()};
    }
    if (d == 0) return {Scope(vars.begin(), vars.end()), std::move(out).finish()};

    // Iterative depth-first odometer.
    std::size_t level = 0;
    assign[0] = 0;
    while (true) {
        bool ok = satisfied(level + 1);
        if (ok && level + 1 == n) out.add(assign);
        if (ok && level + 1 < n) {
            ++level;
            assign[level] = 0;
            continue;
        }
        while (true) {
            if (++assign[level] < d) break;
            if (level == 0) return {Scope(vars.begin(), vars.end()), std::move(out).finish()};
            --level;
        }
    }
}

namespace detail {

// Node `x` replaced by a new internal node joining x with a fresh leaf.
inline JoinDecomposition insert_leaf_above(const JoinDecomposition& t, std::size_t x, std::size_t label) {
    auto nodes = t.nodes();
    std::size_t leaf = nodes.size();
    nodes.push_back({label, {}});
    std::size_t inner = nodes.size();
    nodes.push_back({std::nullopt, {x, leaf}});
    std::size_t root = t.root();
    if (x == root) {
        root = inner;
    } else {
        for (std::size_t j = 0; j < leaf; ++j)
            for (auto& c : nodes[j].children)
                if (c == x) c = inner;
    }
    return JoinDecomposition::from_nodes(std::move(nodes), root);
}

}  // namespace detail

/// Every rooted binary tree with leaves 0..n-1, each exactly once, in a
/// canonical form where the left subtree holds the smaller minimum leaf.
/// There are (2n-3)!! of them.
inline std::vector<JoinDecomposition> all_rooted_binary_trees(std::size_t n) {
    if (n == 0) return {};
    std::vector<JoinDecomposition> cur{JoinDecomposition::leaf(0)};
    for (std::size_t k = 1; k < n; ++k) {
        std::vector<JoinDecomposition> next;
        for (const auto& t : cur)
            for (auto x : t.post_order()) next.push_back(detail::insert_leaf_above(t, x, k));
        cur = std::move(next);
    }
    return cur;
}

/// Minimum pruned width over all decompositions; ties go to the first tree
/// in enumeration order.
inline WidthResult brute_force_joinwidth(const Instance& inst, std::size_t limit = 6) {
    if (inst.constraints.empty()) throw DegenerateInstance("instance has no constraints");
    if (inst.num_constraints() > limit) throw LimitExceeded("constraint limit", inst.num_constraints(), limit);
    WidthResult best;
    bool have = false;
    for (auto& t : all_rooted_binary_trees(inst.num_constraints())) {
        auto rep = evaluate(t, inst, Semantics::pruned);
        if (!have || rep.max_count < best.count) {
            best.count = rep.max_count;
            best.width = rep.width;
            best.decomposition = std::move(t);
            have = true;
        }
    }
    return best;
}

namespace detail {

// |δ(F)|: vertices shared between the edges in F and the edges outside F.
inline std::size_t cut_size(const Hypergraph& h, std::uint64_t f) {
    VarSet in, out;
    for (std::size_t e = 0; e < h.edges.size(); ++e) (f >> e & 1 ? in : out) |= h.edges[e];
    return (in & out).size();
}

}  // namespace detail

/// Branchwidth (or linear branchwidth) by enumerating rooted binary trees over
/// the edges: the cuts of a branch decomposition are the leaf sets below the
/// non-root nodes. Edgeless or single-edge hypergraphs have width 0.
inline std::size_t brute_force_branchwidth(const Hypergraph& h, bool linear_only = false, std::size_t limit = 6) {
    const std::size_t m = h.edges.size();
    if (m > limit) throw LimitExceeded("edge limit", m, limit);
    if (m <= 1) return 0;
    std::vector<JoinDecomposition> trees;
    if (linear_only) {
        std::vector<std::size_t> order(m);
        std::iota(order.begin(), order.end(), std::size_t{0});
        do trees.push_back(linear_from_order(order));
        while (std::next_permutation(order.begin(), order.end()));
    } else {
        trees = all_rooted_binary_trees(m);
    }
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (const auto& t : trees) {
        std::vector<std::uint64_t> below(t.size(), 0);
        std::size_t worst = 0;
        for (auto j : t.post_order()) {
            const auto& n = t.node(j);
            if (n.constraint)
                below[j] = std::uint64_t{1} << *n.constraint;
            else
                for (auto c : n.children) below[j] |= below[c];
            if (j != t.root()) worst = std::max(worst, detail::cut_size(h, below[j]));
        }
        best = std::min(best, worst);
    }
    return best;
}

/// Same quantity by memoization over edge subsets: g(F) is the best width of
/// a subtree with leaf set F, counting the cut of F itself.
inline std::size_t branchwidth_by_subsets(const Hypergraph& h, bool linear_only = false, std::size_t limit = 16) {
    const std::size_t m = h.edges.size();
    if (m > limit) throw LimitExceeded("edge limit", m, limit);
    if (m <= 1) return 0;
    const std::uint64_t full = (std::uint64_t{1} << m) - 1;
    std::vector<std::size_t> g(full + 1, 0);
    auto best_split = [&](std::uint64_t f) {
        std::size_t best = std::numeric_limits<std::size_t>::max();
        if (linear_only) {
            for (std::uint64_t r = f; r; r &= r - 1) {
                std::uint64_t e = r & (~r + 1);
                best = std::min(best, std::max(g[e], g[f & ~e]));
            }
            return best;
        }
        std::uint64_t low = f & (~f + 1), rest = f & ~low;
        for (std::uint64_t s = (rest - 1) & rest;; s = (s - 1) & rest) {
            std::uint64_t f0 = low | s;
            best = std::min(best, std::max(g[f0], g[f & ~f0]));
            if (s == 0) break;
        }
        return best;
    };
    for (std::uint64_t f = 1; f < full; ++f) {
        std::size_t cut = detail::cut_size(h, f);
        g[f] = std::popcount(f) == 1 ? cut : std::max(cut, best_split(f));
    }
    return best_split(full);
}

}  // namespace jw
