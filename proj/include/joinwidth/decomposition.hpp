#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "joinwidth/error.hpp"
#include "joinwidth/instance.hpp"
#include "joinwidth/width.hpp"

namespace jw {

struct DecompositionNode {
    std::optional<std::size_t> constraint;  // set on leaves
    std::vector<std::size_t> children;
};

/// Rooted binary tree whose leaves carry constraint indices.
class JoinDecomposition {
public:
    static JoinDecomposition leaf(std::size_t constraint) {
        JoinDecomposition d;
        d.nodes_.push_back({constraint, {}});
        d.root_ = 0;
        return d;
    }

    static JoinDecomposition join(const JoinDecomposition& left, const JoinDecomposition& right) {
        JoinDecomposition d;
        d.nodes_ = left.nodes_;
        std::size_t shift = d.nodes_.size();
        for (auto n : right.nodes_) {
            for (auto& ch : n.children) ch += shift;
            d.nodes_.push_back(std::move(n));
        }
        d.nodes_.push_back({std::nullopt, {left.root_, right.root_ + shift}});
        d.root_ = d.nodes_.size() - 1;
        return d;
    }

    /// Raw construction; no checks beyond what validate() reports.
    static JoinDecomposition from_nodes(std::vector<DecompositionNode> nodes, std::size_t root) {
        JoinDecomposition d;
        d.nodes_ = std::move(nodes);
        d.root_ = root;
        return d;
    }

    std::size_t root() const { return root_; }
    std::size_t size() const { return nodes_.size(); }
    const DecompositionNode& node(std::size_t j) const { return nodes_.at(j); }
    const std::vector<DecompositionNode>& nodes() const { return nodes_; }
    bool is_leaf(std::size_t j) const { return nodes_.at(j).children.empty(); }

    /// Nodes reachable from the root, children before parents, left first.
    /// Assumes the structure is a tree.
    std::vector<std::size_t> post_order() const {
        std::vector<std::size_t> out;
        if (root_ >= nodes_.size()) return out;
        std::vector<std::pair<std::size_t, std::size_t>> stack{{root_, 0}};
        while (!stack.empty()) {
            auto& [j, next] = stack.back();
            const auto& ch = nodes_[j].children;
            if (next < ch.size()) {
                std::size_t c = ch[next++];
                if (c < nodes_.size()) stack.push_back({c, 0});
            } else {
                out.push_back(j);
                stack.pop_back();
            }
        }
        return out;
    }

    /// Constraint labels of the leaves in left-to-right order.
    std::vector<std::size_t> leaf_labels() const {
        std::vector<std::size_t> out;
        for (auto j : post_order())
            if (nodes_[j].constraint) out.push_back(*nodes_[j].constraint);
        return out;
    }

private:
    std::vector<DecompositionNode> nodes_;
    std::size_t root_ = 0;
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

inline ValidationReport validate(const JoinDecomposition& dec, const Instance& inst) {
    ValidationReport rep;
    auto add = [&](std::string v) {
        if (std::find(rep.violations.begin(), rep.violations.end(), v) == rep.violations.end())
            rep.violations.push_back(std::move(v));
    };
    const auto& nodes = dec.nodes();
    if (dec.root() >= nodes.size()) {
        add("missing root");
        return rep;
    }
    std::vector<int> seen(nodes.size(), 0);
    std::vector<int> label_count(inst.num_constraints(), 0);
    std::vector<std::size_t> stack{dec.root()};
    while (!stack.empty()) {
        std::size_t j = stack.back();
        stack.pop_back();
        if (seen[j]++) {
            add("not a tree");
            continue;
        }
        const auto& n = nodes[j];
        if (n.children.empty()) {
            if (!n.constraint) {
                add("unlabeled leaf");
            } else if (*n.constraint >= inst.num_constraints()) {
                add("leaf label out of range");
            } else {
                ++label_count[*n.constraint];
            }
            continue;
        }
        if (n.children.size() != 2) add("not binary");
        if (n.constraint) add("labeled internal node");
        for (auto c : n.children) {
            if (c >= nodes.size())
                add("child out of range");
            else
                stack.push_back(c);
        }
    }
    for (std::size_t j = 0; j < nodes.size(); ++j)
        if (!seen[j]) add("unreachable node");
    for (auto k : label_count) {
        if (k > 1) add("duplicate leaf label");
        if (k == 0) add("leaf bijection incomplete");
    }
    return rep;
}

inline void require_valid(const JoinDecomposition& dec, const Instance& inst) {
    auto rep = validate(dec, inst);
    if (!rep.ok()) {
        std::string msg = "invalid decomposition:";
        for (const auto& v : rep.violations) msg += " " + v + ";";
        throw InvalidDecomposition(msg);
    }
}

/// X(j), V(j), V̄(j) and S(j) = V(j) ∩ V̄(j).
struct NodeSets {
    std::vector<std::size_t> covered;
    VarSet vars;
    VarSet outside_vars;
    VarSet boundary;
};

/// Indexed by node id. Unreachable nodes get empty sets.
inline std::vector<NodeSets> node_sets(const JoinDecomposition& dec, const Instance& inst) {
    std::vector<NodeSets> out(dec.size());
    for (auto j : dec.post_order()) {
        const auto& n = dec.node(j);
        auto& s = out[j];
        if (n.constraint) {
            s.covered.push_back(*n.constraint);
        } else {
            for (auto c : n.children) s.covered.insert(s.covered.end(), out[c].covered.begin(), out[c].covered.end());
            std::sort(s.covered.begin(), s.covered.end());
        }
        std::vector<bool> inside(inst.num_constraints(), false);
        for (auto c : s.covered) inside[c] = true;
        for (std::size_t c = 0; c < inst.num_constraints(); ++c) {
            if (inside[c])
                s.vars |= inst.constraints[c].vars();
            else
                s.outside_vars |= inst.constraints[c].vars();
        }
        s.boundary = s.vars & s.outside_vars;
    }
    return out;
}

enum class Semantics { naive, proj, pruned };

inline const char* to_string(Semantics s) {
    switch (s) {
        case Semantics::naive: return "naive";
        case Semantics::proj: return "proj";
        case Semantics::pruned: return "pruned";
    }
    return "?";
}

struct NodeEvaluation {
    std::size_t node = 0;
    Semantics semantics = Semantics::pruned;
    Constraint constraint;
    double width = 0.0;
    std::size_t count() const { return constraint.size(); }
};

struct EvaluationReport {
    std::vector<NodeEvaluation> nodes;  // post-order
    std::size_t base = 2;
    double width = 0.0;
    std::size_t max_count = 0;
    std::optional<bool> satisfiable;

    const NodeEvaluation& at(std::size_t node) const {
        for (const auto& e : nodes)
            if (e.node == node) return e;
        throw std::out_of_range("node not evaluated");
    }
};

using NodeCallback = std::function<void(const NodeEvaluation&)>;

/// Bottom-up evaluation under the chosen semantics. With a cap, throws
/// WidthExceeded as soon as a node relation exceeds base^cap tuples.
inline EvaluationReport evaluate(const JoinDecomposition& dec, const Instance& inst, Semantics sem,
                                 std::optional<Width> cap = std::nullopt, const NodeCallback& on_node = {}) {
    require_valid(dec, inst);
    EvaluationReport rep;
    rep.base = width_base(inst);
    std::optional<std::uint64_t> limit;
    if (cap) limit = tuple_cap(rep.base, *cap);

    auto sets = node_sets(dec, inst);
    std::vector<std::optional<Constraint>> value(dec.size());
    for (auto j : dec.post_order()) {
        const auto& n = dec.node(j);
        Constraint c;
        if (n.constraint) {
            c = inst.constraints[*n.constraint];
        } else {
            c = natural_join(*value[n.children[0]], *value[n.children[1]]);
            value[n.children[0]].reset();
            value[n.children[1]].reset();
        }
        switch (sem) {
            case Semantics::naive: break;
            case Semantics::proj: c = project(c, sets[j].outside_vars); break;
            case Semantics::pruned: c = prune(project(c, sets[j].boundary), inst); break;
        }
        if (limit && c.size() > *limit) throw WidthExceeded(j, c.size());
        NodeEvaluation e{j, sem, c, width_of(c.size(), rep.base)};
        rep.width = std::max(rep.width, e.width);
        rep.max_count = std::max(rep.max_count, e.count());
        if (on_node) on_node(e);
        rep.nodes.push_back(std::move(e));
        value[j] = std::move(c);
    }
    if (sem == Semantics::pruned) rep.satisfiable = !value[dec.root()]->empty();
    return rep;
}

/// A decomposition together with its width and largest node relation.
struct WidthResult {
    double width = 0.0;
    std::size_t count = 0;
    JoinDecomposition decomposition;
};

/// Left-deep tree: order[0] and order[1] join first, then each further
/// constraint joins the running spine.
inline JoinDecomposition linear_from_order(const std::vector<std::size_t>& order) {
    if (order.empty()) throw std::invalid_argument("linear_from_order: empty order");
    std::vector<bool> seen(order.size(), false);
    for (auto i : order) {
        if (i >= order.size() || seen[i]) throw std::invalid_argument("linear_from_order: not a permutation");
        seen[i] = true;
    }
    JoinDecomposition d = JoinDecomposition::leaf(order[0]);
    for (std::size_t k = 1; k < order.size(); ++k) d = JoinDecomposition::join(d, JoinDecomposition::leaf(order[k]));
    return d;
}

inline bool is_linear(const JoinDecomposition& dec) {
    for (auto j : dec.post_order()) {
        const auto& n = dec.node(j);
        if (n.children.empty()) continue;
        bool leaf_child = std::any_of(n.children.begin(), n.children.end(), [&](auto c) { return dec.is_leaf(c); });
        if (!leaf_child) return false;
    }
    return true;
}

}  // namespace jw
