#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "joinwidth/error.hpp"
#include "joinwidth/instance.hpp"

namespace jw {

/// Simple undirected graph on vertices 0..n-1.
struct Graph {
    std::size_t n = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;

    Hypergraph as_hypergraph() const {
        Hypergraph h;
        for (std::size_t v = 0; v < n; ++v) h.vertices.insert(static_cast<VarId>(v));
        for (auto [u, v] : edges) h.edges.push_back(VarSet{static_cast<VarId>(u), static_cast<VarId>(v)});
        return h;
    }
};

namespace detail {

inline std::vector<std::string> numbered(const std::string& prefix, std::size_t from, std::size_t count) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(prefix + std::to_string(from + i));
    return out;
}

// Full d^arity relation.
inline Relation complete_relation(std::size_t arity, std::size_t d) {
    RelationBuilder b(arity);
    Tuple t(arity, 0);
    if (d == 0 && arity > 0) return std::move(b).finish();
    while (true) {
        b.add(t);
        std::size_t i = arity;
        while (i > 0 && ++t[i - 1] == d) t[--i] = 0;
        if (i == 0) break;
    }
    return std::move(b).finish();
}

inline void check_graph(const Graph& g) {
    for (auto [u, v] : g.edges) {
        if (u >= g.n || v >= g.n) throw std::invalid_argument("edge endpoint out of range");
        if (u == v) throw std::invalid_argument("graph has a loop");
    }
}

}  // namespace detail

/// Variables a, b, c; constraints x(a,b), y(b,c), z(a,c), each holding all
/// (1,i) and (i,1) for i in 1..N.
inline Instance gen_triangle(std::size_t n) {
    if (n < 1) throw std::invalid_argument("triangle needs N >= 1");
    std::vector<Tuple> rows;
    for (Value i = 0; i < n; ++i) {
        rows.push_back({0, i});
        rows.push_back({i, 0});
    }
    std::vector<Constraint> cons{Constraint::from_tuples({0, 1}, rows), Constraint::from_tuples({1, 2}, rows),
                                 Constraint::from_tuples({0, 2}, rows)};
    return Instance::make({"a", "b", "c"}, detail::numbered("", 1, n), std::move(cons));
}

/// Variables x, v1..vω; constraint i over (x, vi) = {(0,1), (0,0)}.
inline Instance gen_star(std::size_t omega) {
    if (omega < 1) throw std::invalid_argument("star needs omega >= 1");
    std::vector<std::string> names{"x"};
    auto leaves = detail::numbered("v", 1, omega);
    names.insert(names.end(), leaves.begin(), leaves.end());
    std::vector<Constraint> cons;
    for (VarId i = 1; i <= omega; ++i) cons.push_back(Constraint::from_tuples({0, i}, {{0, 1}, {0, 0}}));
    return Instance::make(std::move(names), {"0", "1"}, std::move(cons));
}

/// One complete constraint (all d^|e| tuples) per hyperedge. Variables are
/// the vertices that occur in some edge, named v<id>.
inline Instance gen_complete_hypergraph(const Hypergraph& h, std::size_t d) {
    if (d < 1) throw std::invalid_argument("domain size must be positive");
    VarSet used;
    for (const auto& e : h.edges) used |= e;
    std::vector<std::string> names;
    std::vector<VarId> remap(used.empty() ? 0 : used.ids().back() + 1, 0);
    for (auto v : used) {
        remap[v] = static_cast<VarId>(names.size());
        names.push_back("v" + std::to_string(v));
    }
    std::vector<Constraint> cons;
    for (const auto& e : h.edges) {
        Scope s;
        for (auto v : e) s.push_back(remap[v]);
        cons.emplace_back(s, detail::complete_relation(s.size(), d));
    }
    return Instance::make(std::move(names), detail::numbered("", 0, d), std::move(cons));
}

inline bool is_tree(const Graph& g) {
    if (g.n == 0 || g.edges.size() + 1 != g.n) return false;
    std::vector<std::size_t> parent(g.n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto [u, v] : g.edges) {
        if (u >= g.n || v >= g.n) return false;
        auto a = find(u), b = find(v);
        if (a == b) return false;
        parent[a] = b;
    }
    return true;
}

/// One complete binary constraint per tree edge.
inline Instance gen_tree_complete(const Graph& tree, std::size_t d) {
    if (!is_tree(tree) || tree.edges.empty()) throw std::invalid_argument("input is not a tree with at least one edge");
    if (d < 2) throw std::invalid_argument("tree-complete needs d >= 2");
    return gen_complete_hypergraph(tree.as_hypergraph(), d);
}

/// Edge constraints c_e over (a, vi, vj) plus a complete unary constraint
/// on b over 1..n+ω, where n counts all graph vertices. Isolated vertices do
/// not become variables.
inline Instance gen_bw_reduction(const Graph& g, std::size_t omega) {
    detail::check_graph(g);
    if (g.edges.empty()) throw std::invalid_argument("graph has no edges");
    if (omega < 1) throw std::invalid_argument("omega must be positive");
    const std::size_t n = g.n;
    std::vector<bool> used(n, false);
    for (auto [u, v] : g.edges) used[u] = used[v] = true;
    std::vector<std::string> names{"a"};
    std::vector<VarId> id(n, 0);
    for (std::size_t v = 0; v < n; ++v)
        if (used[v]) {
            id[v] = static_cast<VarId>(names.size());
            names.push_back("v" + std::to_string(v + 1));
        }
    const auto b = static_cast<VarId>(names.size());
    names.push_back("b");

    std::vector<Constraint> cons;
    for (auto [i, j] : g.edges) {
        std::vector<Tuple> rows;
        for (Value l = 0; l < n; ++l) {
            // value ids are 0-based: id 0 is "1", id 1 is "2"
            std::vector<Value> vi{0}, vj{0};
            if (l == i) vi.push_back(1);
            if (l == j) vj.push_back(1);
            for (auto x : vi)
                for (auto y : vj) rows.push_back({l, x, y});
        }
        cons.push_back(Constraint::from_tuples({0, id[i], id[j]}, rows));
    }
    cons.emplace_back(Scope{b}, detail::complete_relation(1, n + omega));
    return Instance::make(std::move(names), detail::numbered("", 1, n + omega), std::move(cons));
}

/// Variables v_S for the m-subsets S of [2m], m = 4ω+1; constraint i has
/// scope {v_S : i ∈ S} and holds, for each scope variable v, every tuple
/// with t[v] in [n] and 1 elsewhere.
inline Instance gen_agm(std::size_t omega, bool allow_large = false) {
    if (omega < 1) throw std::invalid_argument("omega must be positive");
    if (omega > 1 && !allow_large) throw LimitExceeded("agm size guard", omega, 1);
    const std::size_t m = 4 * omega + 1;
    std::vector<std::vector<std::size_t>> subsets;
    std::vector<std::size_t> idx(m);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    while (true) {
        subsets.push_back(idx);
        std::size_t i = m;
        while (i > 0 && idx[i - 1] == 2 * m - m + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < m; ++j) idx[j] = idx[j - 1] + 1;
    }
    const std::size_t n = subsets.size();
    std::vector<std::string> names;
    for (const auto& s : subsets) {
        std::string name = "s";
        for (std::size_t k = 0; k < s.size(); ++k) name += (k ? "." : "") + std::to_string(s[k] + 1);
        names.push_back(name);
    }
    std::vector<Constraint> cons;
    for (std::size_t i = 0; i < 2 * m; ++i) {
        Scope scope;
        for (VarId v = 0; v < n; ++v)
            if (std::binary_search(subsets[v].begin(), subsets[v].end(), i)) scope.push_back(v);
        RelationBuilder rb(scope.size());
        Tuple t(scope.size(), 0);
        for (std::size_t p = 0; p < scope.size(); ++p) {
            for (Value x = 0; x < n; ++x) {
                t[p] = x;
                rb.add(t);
            }
            t[p] = 0;
        }
        cons.emplace_back(std::move(scope), std::move(rb).finish());
    }
    return Instance::make(std::move(names), detail::numbered("", 1, n), std::move(cons));
}

struct ChainOptions {
    std::size_t omega = 1;
    std::optional<std::size_t> n;  // overrides 16ω
    bool include_complete = true;
    bool allow_large = false;
};

/// Variables x1..xn over 1..n; chain constraints (xi, xi+1) with
/// t[xi] < t[xi+1], followed by complete constraints on every non-adjacent
/// pair l < m-1.
inline Instance gen_chain(const ChainOptions& opt) {
    if (opt.omega < 1) throw std::invalid_argument("omega must be positive");
    const std::size_t n = opt.n.value_or(16 * opt.omega);
    if (n < 2) throw std::invalid_argument("chain needs at least 2 variables");
    if (n > 16 && !opt.allow_large) throw LimitExceeded("chain size guard", n, 16);
    std::vector<Constraint> cons;
    std::vector<Tuple> less;
    for (Value x = 0; x < n; ++x)
        for (Value y = x + 1; y < n; ++y) less.push_back({x, y});
    for (VarId i = 0; i + 1 < n; ++i) cons.push_back(Constraint::from_tuples({i, i + 1}, less));
    if (opt.include_complete) {
        Relation full = detail::complete_relation(2, n);
        for (VarId l = 0; l < n; ++l)
            for (VarId m = l + 2; m < n; ++m) cons.emplace_back(Scope{l, m}, full);
    }
    return Instance::make(detail::numbered("x", 1, n), detail::numbered("", 1, n), std::move(cons));
}

struct ChainSolution {
    bool satisfiable = false;
    std::vector<Value> assignment;  // value id per variable id
    std::size_t joins = 0;
    std::size_t projections = 0;
};

/// Solves a chain-family instance with joins and projections only:
/// forward and backward unary propagation along the chain, the join of the
/// resulting unary constraints, and a verification join with every
/// constraint.
inline ChainSolution solve_chain_by_propagation(const Instance& inst) {
    const std::size_t n = inst.variables.size();
    ChainSolution out;
    if (n < 2) throw std::invalid_argument("chain instance needs at least 2 variables");
    std::vector<const Constraint*> chain(n - 1, nullptr);
    for (const auto& c : inst.constraints)
        if (c.scope.size() == 2 && c.scope[1] == c.scope[0] + 1 && c.scope[0] + 1 < n && !chain[c.scope[0]])
            chain[c.scope[0]] = &c;
    for (auto* c : chain)
        if (!c) throw std::invalid_argument("not a chain-family instance");

    auto join = [&](const Constraint& a, const Constraint& b) {
        ++out.joins;
        return natural_join(a, b);
    };
    auto proj = [&](const Constraint& a, VarId v) {
        ++out.projections;
        return project(a, VarSet{v});
    };

    // 0-based: up[i] lives on x_i for i >= 1, down[i] on x_i for i <= n-2.
    std::vector<Constraint> up(n), down(n);
    up[1] = proj(*chain[0], 1);
    for (VarId i = 2; i < n; ++i) up[i] = proj(join(up[i - 1], *chain[i - 1]), i);
    down[n - 2] = proj(*chain[n - 2], static_cast<VarId>(n - 2));
    for (VarId i = static_cast<VarId>(n - 2); i-- > 0;) down[i] = proj(join(down[i + 1], *chain[i]), i);

    Constraint b = down[0];
    for (VarId i = 1; i + 1 < n; ++i) b = join(b, join(up[i], down[i]));
    b = join(b, up[n - 1]);

    for (const auto& c : inst.constraints) {
        b = join(b, c);
        if (b.empty()) return out;
    }
    b = reorder(b, Scope(inst.variables.begin(), inst.variables.end()));
    out.satisfiable = true;
    auto row = b.relation.row(0);
    out.assignment.assign(row.begin(), row.end());
    return out;
}

/// Parameters of a seeded random instance.
struct GeneratorSpec {
    std::uint64_t seed = 1;
    std::size_t num_vars = 4;
    std::size_t domain_size = 2;
    std::size_t num_constraints = 3;
    std::size_t min_arity = 2;
    std::size_t max_arity = 2;
    double density = 0.5;
};

namespace detail {

// Raw engine output only, so streams are identical across standard libraries.
struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    std::uint64_t below(std::uint64_t n) { return eng() % n; }
    double unit() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }
};

}  // namespace detail

/// Reproducible random instance. Scopes are resampled until every variable
/// is covered; each tuple of D^arity is kept with probability `density`.
inline Instance gen_random(const GeneratorSpec& spec) {
    if (spec.num_vars == 0 || spec.num_constraints == 0) throw std::invalid_argument("empty random spec");
    if (spec.domain_size == 0) throw std::invalid_argument("domain size must be positive");
    if (spec.min_arity < 1 || spec.min_arity > spec.max_arity) throw std::invalid_argument("bad arity range");
    if (spec.max_arity > spec.num_vars) throw std::invalid_argument("arity exceeds the number of variables");
    if (spec.num_constraints * spec.max_arity < spec.num_vars)
        throw std::invalid_argument("constraints cannot cover every variable");
    if (spec.density < 0.0 || spec.density > 1.0) throw std::invalid_argument("density must be in [0,1]");

    detail::Rng rng(spec.seed);
    std::vector<Scope> scopes;
    for (int attempt = 0;; ++attempt) {
        if (attempt == 10000) throw std::invalid_argument("could not sample covering scopes");
        scopes.clear();
        std::vector<bool> covered(spec.num_vars, false);
        for (std::size_t c = 0; c < spec.num_constraints; ++c) {
            std::size_t arity = spec.min_arity + rng.below(spec.max_arity - spec.min_arity + 1);
            std::vector<VarId> pool(spec.num_vars);
            std::iota(pool.begin(), pool.end(), VarId{0});
            for (std::size_t i = 0; i < arity; ++i) std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
            Scope s(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(arity));
            for (auto v : s) covered[v] = true;
            scopes.push_back(std::move(s));
        }
        if (std::all_of(covered.begin(), covered.end(), [](bool b) { return b; })) break;
    }
    std::vector<Constraint> cons;
    for (auto& s : scopes) {
        Relation all = detail::complete_relation(s.size(), spec.domain_size);
        RelationBuilder b(s.size());
        for (std::size_t r = 0; r < all.size(); ++r)
            if (spec.density >= 1.0 || rng.unit() < spec.density) b.add(all.row(r));
        cons.emplace_back(std::move(s), std::move(b).finish());
    }
    return Instance::make(detail::numbered("v", 0, spec.num_vars), detail::numbered("", 0, spec.domain_size),
                          std::move(cons));
}

/// One constraint over v1..vn whose tuples are the rows of the n×n identity
/// matrix.
inline Instance gen_identity(std::size_t n) {
    if (n < 1) throw std::invalid_argument("identity needs n >= 1");
    Scope s(n);
    std::iota(s.begin(), s.end(), VarId{0});
    std::vector<Tuple> rows;
    for (std::size_t i = 0; i < n; ++i) {
        Tuple t(n, 0);
        t[i] = 1;
        rows.push_back(std::move(t));
    }
    return Instance::make(detail::numbered("v", 1, n), {"0", "1"}, {Constraint::from_tuples(s, rows)});
}

}  // namespace jw
