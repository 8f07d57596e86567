#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "joinwidth/varset.hpp"

namespace jw {

/// Interned domain value: an index into the owning instance's value table.
using Value = std::uint32_t;
using Tuple = std::vector<Value>;

/// A duplicate-free set of equal-length tuples.
///
/// Rows are stored flat and kept in lexicographic order, so two relations
/// with the same tuple set compare equal and serialize identically.
/// Arity zero is legal: such a relation is either empty or holds the single
/// empty tuple.
class Relation {
public:
    Relation() = default;
    explicit Relation(std::size_t arity) : arity_(arity) {}

    /// The arity-0 relation containing only the empty tuple.
    static Relation unit() {
        Relation r;
        r.rows_ = 1;
        return r;
    }

    std::size_t arity() const { return arity_; }
    std::size_t size() const { return rows_; }
    bool empty() const { return rows_ == 0; }

    std::span<const Value> row(std::size_t i) const {
        return {data_.data() + i * arity_, arity_};
    }

    bool contains(std::span<const Value> t) const {
        if (t.size() != arity_) return false;
        if (arity_ == 0) return rows_ > 0;
        std::size_t lo = 0, hi = rows_;
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            auto r = row(mid);
            if (std::lexicographical_compare(r.begin(), r.end(), t.begin(), t.end()))
                lo = mid + 1;
            else
                hi = mid;
        }
        return lo < rows_ && std::equal(t.begin(), t.end(), row(lo).begin());
    }

    std::vector<Tuple> tuples() const {
        std::vector<Tuple> out;
        out.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) out.emplace_back(row(i).begin(), row(i).end());
        return out;
    }

    friend bool operator==(const Relation&, const Relation&) = default;

private:
    friend class RelationBuilder;

    std::size_t arity_ = 0;
    std::size_t rows_ = 0;
    std::vector<Value> data_;
};

/// Accumulates rows in any order (duplicates allowed) and produces a
/// canonical Relation.
class RelationBuilder {
public:
    explicit RelationBuilder(std::size_t arity) : arity_(arity) {}

    void add(std::span<const Value> t) {
        if (t.size() != arity_) throw std::invalid_argument("tuple length does not match arity");
        data_.insert(data_.end(), t.begin(), t.end());
        ++rows_;
    }
    void add(std::initializer_list<Value> t) { add(std::span<const Value>(t.begin(), t.size())); }

    std::size_t pending() const { return rows_; }

    Relation finish() && {
        Relation r(arity_);
        if (arity_ == 0) {
            r.rows_ = rows_ > 0 ? 1 : 0;
            return r;
        }
        std::vector<std::size_t> order(rows_);
        std::iota(order.begin(), order.end(), std::size_t{0});
        auto at = [&](std::size_t i) { return std::span<const Value>(data_.data() + i * arity_, arity_); };
        auto less = [&](std::size_t a, std::size_t b) {
            auto x = at(a), y = at(b);
            return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
        };
        std::sort(order.begin(), order.end(), less);
        r.data_.reserve(data_.size());
        std::size_t kept = 0;
        for (std::size_t k = 0; k < order.size(); ++k) {
            auto cur = at(order[k]);
            if (kept > 0 && std::equal(cur.begin(), cur.end(), r.data_.end() - static_cast<std::ptrdiff_t>(arity_)))
                continue;
            r.data_.insert(r.data_.end(), cur.begin(), cur.end());
            ++kept;
        }
        r.rows_ = kept;
        return r;
    }

private:
    std::size_t arity_;
    std::size_t rows_ = 0;
    std::vector<Value> data_;
};

/// An ordered scope together with a relation over it.
struct Constraint {
    Scope scope;
    Relation relation;

    Constraint() : relation(Relation::unit()) {}
    Constraint(Scope s, Relation r) : scope(std::move(s)), relation(std::move(r)) {
        if (relation.arity() != scope.size())
            throw std::invalid_argument("relation arity does not match scope length");
        VarSet vs = VarSet::of(scope);
        if (vs.size() != scope.size()) throw std::invalid_argument("scope repeats a variable");
    }

    static Constraint from_tuples(Scope s, const std::vector<Tuple>& rows) {
        RelationBuilder b(s.size());
        for (const auto& t : rows) b.add(t);
        return {std::move(s), std::move(b).finish()};
    }

    /// The empty-scope constraint: tautological ({()}) or unsatisfiable ({}).
    static Constraint nullary(bool satisfiable) {
        Constraint c;
        c.relation = satisfiable ? Relation::unit() : Relation{};
        return c;
    }

    std::size_t size() const { return relation.size(); }
    bool empty() const { return relation.empty(); }
    VarSet vars() const { return VarSet::of(scope); }

    friend bool operator==(const Constraint&, const Constraint&) = default;
};

namespace detail {

inline std::size_t position_of(const Scope& scope, VarId v) {
    auto it = std::find(scope.begin(), scope.end(), v);
    return it == scope.end() ? scope.size() : static_cast<std::size_t>(it - scope.begin());
}

inline std::uint64_t hash_values(std::span<const Value> row, const std::vector<std::size_t>& cols) {
    std::uint64_t h = 1469598103934665603ull;
    for (auto c : cols) {
        h ^= row[c] + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace detail

/// Natural join. The result scope is S(c1) followed by the variables of S(c2)
/// that are not in S(c1), in S(c2) order.
inline Constraint natural_join(const Constraint& c1, const Constraint& c2) {
    std::vector<std::size_t> key1, key2, extra2;
    for (std::size_t j = 0; j < c2.scope.size(); ++j) {
        std::size_t i = detail::position_of(c1.scope, c2.scope[j]);
        if (i < c1.scope.size()) {
            key1.push_back(i);
            key2.push_back(j);
        } else {
            extra2.push_back(j);
        }
    }
    Scope scope = c1.scope;
    for (auto j : extra2) scope.push_back(c2.scope[j]);

    const Relation& r1 = c1.relation;
    const Relation& r2 = c2.relation;
    RelationBuilder out(scope.size());
    if (r1.empty() || r2.empty()) return {std::move(scope), std::move(out).finish()};

    std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets;
    buckets.reserve(r2.size());
    for (std::size_t k = 0; k < r2.size(); ++k) buckets[detail::hash_values(r2.row(k), key2)].push_back(k);

    Tuple buf(scope.size());
    for (std::size_t a = 0; a < r1.size(); ++a) {
        auto t = r1.row(a);
        auto it = buckets.find(detail::hash_values(t, key1));
        if (it == buckets.end()) continue;
        for (auto b : it->second) {
            auto u = r2.row(b);
            bool match = true;
            for (std::size_t q = 0; q < key1.size() && match; ++q) match = t[key1[q]] == u[key2[q]];
            if (!match) continue;
            std::copy(t.begin(), t.end(), buf.begin());
            for (std::size_t q = 0; q < extra2.size(); ++q) buf[t.size() + q] = u[extra2[q]];
            out.add(buf);
        }
    }
    return {std::move(scope), std::move(out).finish()};
}

/// Projection onto `vars`; variables outside the scope are ignored and the
/// scope order is preserved.
inline Constraint project(const Constraint& c, const VarSet& vars) {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < c.scope.size(); ++i)
        if (vars.contains(c.scope[i])) keep.push_back(i);
    if (keep.size() == c.scope.size()) return c;

    Scope scope;
    for (auto i : keep) scope.push_back(c.scope[i]);
    RelationBuilder out(scope.size());
    Tuple buf(scope.size());
    for (std::size_t r = 0; r < c.relation.size(); ++r) {
        auto t = c.relation.row(r);
        for (std::size_t q = 0; q < keep.size(); ++q) buf[q] = t[keep[q]];
        out.add(buf);
    }
    return {std::move(scope), std::move(out).finish()};
}

/// Permutes columns so the scope equals `order` (which must be a permutation
/// of the current scope).
inline Constraint reorder(const Constraint& c, const Scope& order) {
    if (order == c.scope) return c;
    if (order.size() != c.scope.size()) throw std::invalid_argument("reorder: not a permutation of the scope");
    std::vector<std::size_t> src;
    for (auto v : order) {
        std::size_t p = detail::position_of(c.scope, v);
        if (p == c.scope.size()) throw std::invalid_argument("reorder: not a permutation of the scope");
        src.push_back(p);
    }
    RelationBuilder out(order.size());
    Tuple buf(order.size());
    for (std::size_t r = 0; r < c.relation.size(); ++r) {
        auto t = c.relation.row(r);
        for (std::size_t q = 0; q < src.size(); ++q) buf[q] = t[src[q]];
        out.add(buf);
    }
    return {order, std::move(out).finish()};
}

/// Same tuple set up to column order.
inline bool equivalent(const Constraint& a, const Constraint& b) {
    if (a.vars() != b.vars() || a.scope.size() != b.scope.size()) return false;
    return reorder(b, a.scope).relation == a.relation;
}

}  // namespace jw
