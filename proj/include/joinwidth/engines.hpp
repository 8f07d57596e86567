#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "joinwidth/decomposition.hpp"
#include "joinwidth/error.hpp"
#include "joinwidth/instance.hpp"
#include "joinwidth/width.hpp"

namespace jw {

enum class Verdict { sat, unsat, width_exceeded };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::sat: return "SAT";
        case Verdict::unsat: return "UNSAT";
        case Verdict::width_exceeded: return "WIDTH-EXCEEDED";
    }
    return "?";
}

struct SolveResult {
    Verdict verdict;
    EvaluationReport report;
};

inline SolveResult solve_with_decomposition(const Instance& inst, const JoinDecomposition& dec) {
    auto rep = evaluate(dec, inst, Semantics::pruned);
    Verdict v = *rep.satisfiable ? Verdict::sat : Verdict::unsat;
    return {v, std::move(rep)};
}

struct DPStats {
    std::size_t subsets_expanded = 0;
    std::size_t relations_materialized = 0;
    std::size_t peak_relation_size = 0;
};

struct SearchOutcome {
    bool found = false;
    std::optional<JoinDecomposition> decomposition;
    double width = 0.0;         // realized pruned width of the decomposition
    std::size_t max_count = 0;  // largest node relation in the decomposition
    DPStats stats;
};

namespace detail {

using Mask = std::uint64_t;

// Subset bookkeeping shared by the two constraint-subset engines.
struct ConstraintSubsets {
    const Instance& inst;
    std::size_t m;
    std::vector<Mask> occ;  // per variable id: constraints whose scope contains it

    explicit ConstraintSubsets(const Instance& in) : inst(in), m(in.num_constraints()) {
        occ.assign(inst.variable_names.size(), 0);
        for (std::size_t c = 0; c < m; ++c)
            for (auto v : inst.constraints[c].scope) occ[v] |= Mask{1} << c;
    }

    Mask full() const { return m == 64 ? ~Mask{0} : (Mask{1} << m) - 1; }

    VarSet boundary(Mask sub) const {
        std::vector<VarId> out;
        Mask rest = full() & ~sub;
        for (auto v : inst.variables)
            if ((occ[v] & sub) && (occ[v] & rest)) out.push_back(v);
        return VarSet::of(out);
    }

    Constraint alpha_leaf(std::size_t c) const {
        return prune(project(inst.constraints[c], boundary(Mask{1} << c)), inst);
    }

    Constraint alpha_join(const Constraint& a0, const Constraint& a1, Mask sub, DPStats& st) const {
        Constraint j = natural_join(a0, a1);
        st.peak_relation_size = std::max(st.peak_relation_size, j.size());
        Constraint a = prune(project(j, boundary(sub)), inst);
        st.peak_relation_size = std::max(st.peak_relation_size, a.size());
        ++st.relations_materialized;
        return a;
    }

    JoinDecomposition rebuild(Mask sub, const std::vector<Mask>& split) const {
        if (std::popcount(sub) == 1) return JoinDecomposition::leaf(static_cast<std::size_t>(std::countr_zero(sub)));
        Mask c0 = split[sub];
        return JoinDecomposition::join(rebuild(c0, split), rebuild(sub & ~c0, split));
    }
};

inline void check_constraint_limit(const Instance& inst, std::size_t limit) {
    if (inst.constraints.empty()) throw DegenerateInstance("instance has no constraints");
    std::size_t cap = std::min<std::size_t>(limit, 30);
    if (inst.num_constraints() > cap) throw LimitExceeded("constraint subset limit", inst.num_constraints(), cap);
}

}  // namespace detail

/// Called with each subset mask and its boundary relation when the subset
/// turns out feasible.
using SubsetObserver = std::function<void(std::uint64_t, const Constraint&)>;

/// Decides whether a decomposition of width at most w exists by dynamic
/// programming over constraint subsets; reconstructs one if so.
inline SearchOutcome find_decomposition_dp(const Instance& inst, const Width& w, std::size_t limit = 20,
                                           const SubsetObserver& on_subset = {}) {
    using detail::Mask;
    detail::check_constraint_limit(inst, limit);
    detail::ConstraintSubsets cs(inst);
    const std::size_t m = cs.m;
    const std::uint64_t cap = tuple_cap(width_base(inst), w);

    SearchOutcome out;
    auto& st = out.stats;
    const Mask full = cs.full();
    std::vector<std::uint8_t> feasible(std::size_t{1} << m, 0);
    std::vector<Mask> split(std::size_t{1} << m, 0);
    std::unordered_map<Mask, Constraint> alpha;

    // Submasks are numerically smaller, so increasing order is bottom-up.
    for (Mask sub = 1; sub <= full; ++sub) {
        if (std::popcount(sub) == 1) {
            ++st.subsets_expanded;
            Constraint a = cs.alpha_leaf(static_cast<std::size_t>(std::countr_zero(sub)));
            ++st.relations_materialized;
            st.peak_relation_size = std::max(st.peak_relation_size, a.size());
            if (a.size() <= cap) {
                feasible[sub] = 1;
                if (on_subset) on_subset(sub, a);
                alpha.emplace(sub, std::move(a));
            }
            continue;
        }
        Mask low = sub & (~sub + 1);
        Mask rest = sub & ~low;
        // C0 = low | s for every proper submask s of rest (including empty).
        for (Mask s = (rest - 1) & rest;; s = (s - 1) & rest) {
            Mask c0 = low | s, c1 = sub & ~c0;
            if (feasible[c0] && feasible[c1]) {
                ++st.subsets_expanded;
                Constraint a = cs.alpha_join(alpha.at(c0), alpha.at(c1), sub, st);
                if (a.size() <= cap) {
                    feasible[sub] = 1;
                    split[sub] = c0;
                    if (on_subset) on_subset(sub, a);
                    alpha.emplace(sub, std::move(a));
                }
                break;
            }
            if (s == 0) break;
        }
    }
    if (!feasible[full]) return out;

    out.found = true;
    out.decomposition = cs.rebuild(full, split);
    auto rep = evaluate(*out.decomposition, inst, Semantics::pruned);
    out.width = rep.width;
    out.max_count = rep.max_count;
    return out;
}

/// Minimum-width decomposition: f(C') = max(|α(C')|, min over splits of
/// max(f(C0), f(C1))).
inline WidthResult exact_joinwidth(const Instance& inst, std::size_t limit = 20) {
    using detail::Mask;
    detail::check_constraint_limit(inst, limit);
    detail::ConstraintSubsets cs(inst);
    const std::size_t m = cs.m;
    const Mask full = cs.full();
    DPStats st;

    std::vector<Constraint> alpha(std::size_t{1} << m);
    std::vector<std::size_t> f(std::size_t{1} << m, 0);
    std::vector<Mask> split(std::size_t{1} << m, 0);
    for (Mask sub = 1; sub <= full; ++sub) {
        if (std::popcount(sub) == 1) {
            alpha[sub] = cs.alpha_leaf(static_cast<std::size_t>(std::countr_zero(sub)));
            f[sub] = alpha[sub].size();
            continue;
        }
        Mask low = sub & (~sub + 1);
        Mask rest = sub & ~low;
        alpha[sub] = cs.alpha_join(alpha[low], alpha[rest], sub, st);
        std::size_t best = SIZE_MAX;
        for (Mask s = (rest - 1) & rest;; s = (s - 1) & rest) {
            Mask c0 = low | s, c1 = sub & ~c0;
            std::size_t v = std::max(f[c0], f[c1]);
            if (v < best) {
                best = v;
                split[sub] = c0;
            }
            if (s == 0) break;
        }
        f[sub] = std::max(best, alpha[sub].size());
    }
    WidthResult r;
    r.count = f[full];
    r.width = width_of(r.count, width_base(inst));
    r.decomposition = cs.rebuild(full, split);
    return r;
}

struct VariableDPOutcome {
    Verdict verdict;
    DPStats stats;
};

/// Decides satisfiability by dynamic programming over variable subsets with
/// boundary relations capped at base^w tuples. A width_exceeded verdict
/// means the cap blocked every route to the full variable set.
///
/// α(V') lives on B(V'), the variables of V' that occur in some constraint
/// not contained in V'. Base case: V' is the scope set of a constraint c and
/// α = project(prune(c), B(V')). Combination: V0 ∪ V1 = V' with both proper
/// and V0 ∩ V1 inside B(V0) or B(V1); α = project(prune(α0 ⋈ α1), B(V')).
inline VariableDPOutcome solve_variable_dp(const Instance& inst, const Width& w, std::size_t limit = 16) {
    using detail::Mask;
    if (inst.constraints.empty()) throw DegenerateInstance("instance has no constraints");
    const auto& vars = inst.variables.ids();
    const std::size_t n = vars.size();
    std::size_t hard = std::min<std::size_t>(limit, 30);
    if (n > hard) throw LimitExceeded("variable subset limit", n, hard);

    VariableDPOutcome out{Verdict::sat, {}};
    auto& st = out.stats;
    if (n == 0) {
        bool sat = std::all_of(inst.constraints.begin(), inst.constraints.end(), [](const auto& c) { return !c.empty(); });
        out.verdict = sat ? Verdict::sat : Verdict::unsat;
        return out;
    }

    std::vector<std::size_t> pos(inst.variable_names.size(), 0);
    for (std::size_t i = 0; i < n; ++i) pos[vars[i]] = i;
    const std::size_t m = inst.num_constraints();
    std::vector<Mask> scope_mask(m, 0);
    for (std::size_t c = 0; c < m; ++c)
        for (auto v : inst.constraints[c].scope) scope_mask[c] |= Mask{1} << pos[v];

    const Mask full = (Mask{1} << n) - 1;
    const std::uint64_t cap = tuple_cap(width_base(inst), w);

    auto boundary = [&](Mask sub) {
        Mask b = 0;
        for (std::size_t c = 0; c < m; ++c)
            if (scope_mask[c] & ~sub) b |= scope_mask[c] & sub;
        return b;
    };
    auto to_varset = [&](Mask b) {
        std::vector<VarId> ids;
        for (std::size_t i = 0; i < n; ++i)
            if (b >> i & 1) ids.push_back(vars[i]);
        return VarSet::of(ids);
    };

    std::vector<std::uint8_t> feasible(std::size_t{1} << n, 0);
    std::vector<Mask> bmask(std::size_t{1} << n, 0);
    std::unordered_map<Mask, Constraint> alpha;

    for (Mask sub = 1; sub <= full; ++sub) {
        Mask covered = 0;
        std::optional<std::size_t> base_case;
        for (std::size_t c = 0; c < m; ++c) {
            if ((scope_mask[c] & ~sub) == 0) covered |= scope_mask[c];
            if (scope_mask[c] == sub && !base_case) base_case = c;
        }
        if (covered != sub) continue;  // not a union of scopes
        Mask bsub = boundary(sub);
        bmask[sub] = bsub;
        VarSet bset = to_varset(bsub);

        if (base_case) {
            ++st.subsets_expanded;
            Constraint a = project(prune(inst.constraints[*base_case], inst), bset);
            ++st.relations_materialized;
            st.peak_relation_size = std::max(st.peak_relation_size, a.size());
            feasible[sub] = 1;
            alpha.emplace(sub, std::move(a));
            continue;
        }

        bool done = false;
        for (Mask v0 = (sub - 1) & sub; v0 && !done; v0 = (v0 - 1) & sub) {
            if (!feasible[v0]) continue;
            Mask need = sub & ~v0;
            // v1 = need | t, t a proper submask of v0
            for (Mask t = (v0 - 1) & v0;; t = (t - 1) & v0) {
                Mask v1 = need | t;
                if (feasible[v1]) {
                    Mask shared = v0 & v1;
                    if ((shared & ~bmask[v0]) == 0 || (shared & ~bmask[v1]) == 0) {
                        ++st.subsets_expanded;
                        Constraint j = natural_join(alpha.at(v0), alpha.at(v1));
                        st.peak_relation_size = std::max(st.peak_relation_size, j.size());
                        Constraint a = project(prune(j, inst), bset);
                        ++st.relations_materialized;
                        st.peak_relation_size = std::max(st.peak_relation_size, a.size());
                        if (a.size() <= cap) {
                            feasible[sub] = 1;
                            alpha.emplace(sub, std::move(a));
                            done = true;
                            break;
                        }
                    }
                }
                if (t == 0) break;
            }
        }
    }

    if (!feasible[full])
        out.verdict = Verdict::width_exceeded;
    else
        out.verdict = alpha.at(full).empty() ? Verdict::unsat : Verdict::sat;
    return out;
}

/// Builds a satisfying assignment from a satisfiability oracle by fixing one
/// variable at a time with unary constraints. `is_sat` must be exact for
/// every instance it is handed. Returns values indexed by variable id.
inline std::optional<std::vector<Value>> extract_solution(const Instance& inst,
                                                          const std::function<bool(const Instance&)>& is_sat) {
    if (!is_sat(inst)) return std::nullopt;
    Instance cur = inst;
    std::vector<Value> assignment(inst.variable_names.size(), 0);
    for (auto v : inst.variables) {
        bool fixed = false;
        for (Value d = 0; d < inst.domain_size() && !fixed; ++d) {
            Instance trial = cur;
            trial.constraints.push_back(Constraint::from_tuples({v}, {{d}}));
            if (is_sat(trial)) {
                cur = std::move(trial);
                assignment[v] = d;
                fixed = true;
            }
        }
        if (!fixed) throw std::logic_error("extract_solution: oracle is inconsistent");
    }
    return assignment;
}

}  // namespace jw
