#pragma once
#include <algorithm>
#include <stdexcept>
#include <vector>

#include "monowage/numeric.hpp"

namespace monowage {

// Half-open interval [lo, hi) within [0, 1).
template <class T>
struct Interval {
    T lo;
    T hi;
    bool operator==(const Interval&) const = default;
};

// Finite union of disjoint half-open subintervals of [0, 1), kept sorted and
// merged. Models the share of a productivity level's workers (the index
// dimension) held by a firm. Value type; all operations return new sets.
template <class T>
class IndexSet {
public:
    IndexSet() = default;

    explicit IndexSet(std::vector<Interval<T>> parts) : parts_(std::move(parts)) { normalize(); }

    static IndexSet empty() { return IndexSet(); }
    static IndexSet full() { return interval(T(0), T(1)); }
    static IndexSet interval(T lo, T hi) {
        if (lo < T(0) || hi > T(1) || lo > hi)
            throw std::invalid_argument("IndexSet: interval must satisfy 0 <= lo <= hi <= 1");
        IndexSet s;
        if (lo < hi) s.parts_.push_back({lo, hi});
        return s;
    }

    const std::vector<Interval<T>>& parts() const { return parts_; }
    bool is_empty() const { return parts_.empty(); }

    T measure() const {
        T m(0);
        for (const auto& p : parts_) m += p.hi - p.lo;
        return m;
    }

    IndexSet unite(const IndexSet& other) const {
        std::vector<Interval<T>> all = parts_;
        all.insert(all.end(), other.parts_.begin(), other.parts_.end());
        return IndexSet(std::move(all));
    }

    IndexSet intersect(const IndexSet& other) const {
        std::vector<Interval<T>> out;
        auto a = parts_.begin();
        auto b = other.parts_.begin();
        while (a != parts_.end() && b != other.parts_.end()) {
            T lo = std::max(a->lo, b->lo);
            T hi = std::min(a->hi, b->hi);
            if (lo < hi) out.push_back({lo, hi});
            if (a->hi < b->hi)
                ++a;
            else
                ++b;
        }
        IndexSet s;
        s.parts_ = std::move(out);
        return s;
    }

    // Complement within [0, 1).
    IndexSet complement() const {
        std::vector<Interval<T>> out;
        T cursor(0);
        for (const auto& p : parts_) {
            if (cursor < p.lo) out.push_back({cursor, p.lo});
            cursor = p.hi;
        }
        if (cursor < T(1)) out.push_back({cursor, T(1)});
        IndexSet s;
        s.parts_ = std::move(out);
        return s;
    }

    IndexSet subtract(const IndexSet& other) const { return intersect(other.complement()); }

    // Leftmost subset of the given measure (clamped to the whole set).
    IndexSet take_leftmost(T want) const {
        std::vector<Interval<T>> out;
        for (const auto& p : parts_) {
            if (want <= T(0)) break;
            T len = p.hi - p.lo;
            if (len <= want) {
                out.push_back(p);
                want -= len;
            } else {
                out.push_back({p.lo, T(p.lo + want)});
                want = T(0);
            }
        }
        IndexSet s;
        s.parts_ = std::move(out);
        return s;
    }

    bool operator==(const IndexSet& other) const { return parts_ == other.parts_; }

private:
    void normalize() {
        for (const auto& p : parts_) {
            if (p.lo < T(0) || p.hi > T(1))
                throw std::invalid_argument("IndexSet: intervals must lie within [0,1)");
            if (p.lo > p.hi) throw std::invalid_argument("IndexSet: interval with lo > hi");
        }
        std::erase_if(parts_, [](const Interval<T>& p) { return !(p.lo < p.hi); });
        std::sort(parts_.begin(), parts_.end(),
                  [](const Interval<T>& a, const Interval<T>& b) { return a.lo < b.lo; });
        std::vector<Interval<T>> merged;
        for (const auto& p : parts_) {
            if (!merged.empty() && p.lo <= merged.back().hi)
                merged.back().hi = std::max(merged.back().hi, p.hi);
            else
                merged.push_back(p);
        }
        parts_ = std::move(merged);
    }

    std::vector<Interval<T>> parts_;
};

}  // namespace monowage
