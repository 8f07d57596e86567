#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <vector>

namespace jw {

using VarId = std::uint32_t;
using Scope = std::vector<VarId>;

// Sorted, duplicate-free set of variable ids.
class VarSet {
public:
    using const_iterator = std::vector<VarId>::const_iterator;

    VarSet() = default;
    VarSet(std::initializer_list<VarId> ids) : ids_(ids) { normalize(); }

    template <class Range>
    static VarSet of(const Range& ids) {
        VarSet s;
        s.ids_.assign(std::begin(ids), std::end(ids));
        s.normalize();
        return s;
    }

    bool contains(VarId v) const { return std::binary_search(ids_.begin(), ids_.end(), v); }
    bool empty() const { return ids_.empty(); }
    std::size_t size() const { return ids_.size(); }
    const_iterator begin() const { return ids_.begin(); }
    const_iterator end() const { return ids_.end(); }
    const std::vector<VarId>& ids() const { return ids_; }

    void insert(VarId v) {
        auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
        if (it == ids_.end() || *it != v) ids_.insert(it, v);
    }

    bool is_subset_of(const VarSet& other) const {
        return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(), ids_.end());
    }

    friend VarSet operator|(const VarSet& a, const VarSet& b) {
        VarSet r;
        std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r.ids_));
        return r;
    }
    friend VarSet operator&(const VarSet& a, const VarSet& b) {
        VarSet r;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r.ids_));
        return r;
    }
    friend VarSet operator-(const VarSet& a, const VarSet& b) {
        VarSet r;
        std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r.ids_));
        return r;
    }
    VarSet& operator|=(const VarSet& o) { return *this = *this | o; }

    friend bool operator==(const VarSet&, const VarSet&) = default;

private:
    void normalize() {
        std::sort(ids_.begin(), ids_.end());
        ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
    }

    std::vector<VarId> ids_;
};

}  // namespace jw
