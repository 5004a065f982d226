#pragma once
#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "monowage/index_set.hpp"
#include "monowage/market.hpp"
#include "monowage/numeric.hpp"

namespace monowage {

// One firm's holdings at one productivity level: the hired index share and the
// wage paid there. Entries with zero hired measure are never stored; a level
// absent from the entry list pays wage 0 by convention.
template <class T>
struct AllocationEntry {
    T level;
    IndexSet<T> hired;
    T wage;
    bool operator==(const AllocationEntry&) const = default;
};

template <class T>
struct FirmAllocation {
    std::vector<AllocationEntry<T>> entries;  // sorted by level, positive measure only

    const AllocationEntry<T>* find(const T& level) const {
        for (const auto& e : entries)
            if (e.level == level) return &e;
        return nullptr;
    }
    IndexSet<T> hired_at(const T& level) const {
        const auto* e = find(level);
        return e ? e->hired : IndexSet<T>::empty();
    }
    T wage_at(const T& level) const {
        const auto* e = find(level);
        return e ? e->wage : T(0);
    }
    T hired_measure_at(const T& level) const { return hired_at(level).measure(); }
    bool is_empty() const { return entries.empty(); }

    bool operator==(const FirmAllocation&) const = default;
};

// Drops zero-measure entries and sorts by level.
template <class T>
FirmAllocation<T> make_firm_allocation(std::vector<AllocationEntry<T>> entries) {
    std::erase_if(entries, [](const AllocationEntry<T>& e) { return e.hired.is_empty(); });
    std::sort(entries.begin(), entries.end(),
              [](const AllocationEntry<T>& a, const AllocationEntry<T>& b) { return a.level < b.level; });
    return FirmAllocation<T>{std::move(entries)};
}

template <class T>
struct Allocation {
    FirmAllocation<T> firm1;
    FirmAllocation<T> firm2;

    const FirmAllocation<T>& firm(int j) const { return j == 1 ? firm1 : firm2; }
    FirmAllocation<T>& firm(int j) { return j == 1 ? firm1 : firm2; }

    bool operator==(const Allocation&) const = default;
};

enum class DiagnosticKind {
    UnknownLevel,        // entry at a level not in the population
    DuplicateLevel,      // two entries for the same level
    NegativeWage,        // wage below zero
    NonMonotoneWage,     // wages decrease across hired levels
    OverlappingHires,    // both firms hire the same indices at one level
    InfeasibleMass,      // combined hired measure exceeds the level supply
    BadMenuWage,         // menu-specific: negative offer wage
    NonMonotoneOffer,    // menu-specific: offer wages decrease across offered levels
};

inline const char* diagnostic_kind_name(DiagnosticKind k) {
    switch (k) {
        case DiagnosticKind::UnknownLevel: return "unknown-level";
        case DiagnosticKind::DuplicateLevel: return "duplicate-level";
        case DiagnosticKind::NegativeWage: return "negative-wage";
        case DiagnosticKind::NonMonotoneWage: return "non-monotone-wage";
        case DiagnosticKind::OverlappingHires: return "overlapping-hires";
        case DiagnosticKind::InfeasibleMass: return "infeasible-mass";
        case DiagnosticKind::BadMenuWage: return "bad-menu-wage";
        case DiagnosticKind::NonMonotoneOffer: return "non-monotone-offer";
    }
    return "unknown";
}

struct Diagnostic {
    DiagnosticKind kind;
    int firm;      // 1, 2, or 0 when not firm-specific
    double level;  // offending level (as double for reporting)
    std::string detail;
};

// Checks one firm's allocation in isolation: known levels, no duplicates,
// non-negative wages, monotone wages across its hired levels, and hired
// measure within the level's unit index space (guaranteed by IndexSet).
template <class T>
void validate_firm_allocation(const FirmAllocation<T>& fa, const MarketPopulation<T>& pop,
                              int firm, const Tol<T>& tol, std::vector<Diagnostic>& out) {
    const T* prev_level = nullptr;
    const T* prev_wage = nullptr;
    for (const auto& e : fa.entries) {
        double lv = ScalarTraits<T>::to_double(e.level);
        if (!pop.find_level(e.level))
            out.push_back({DiagnosticKind::UnknownLevel, firm, lv, "level not in population"});
        if (prev_level && !(*prev_level < e.level))
            out.push_back({DiagnosticKind::DuplicateLevel, firm, lv, "duplicate or unsorted level"});
        if (e.wage < T(0))
            out.push_back({DiagnosticKind::NegativeWage, firm, lv, "wage below zero"});
        if (prev_wage && !tol.leq(*prev_wage, e.wage))
            out.push_back({DiagnosticKind::NonMonotoneWage, firm, lv,
                           "wage drops below a lower hired level's wage"});
        prev_level = &e.level;
        prev_wage = &e.wage;
    }
}

// Full allocation diagnostics: per-firm checks plus cross-firm disjointness
// and feasibility at every level. Empty result means the allocation is valid.
template <class T>
std::vector<Diagnostic> validate_allocation(const Allocation<T>& a, const MarketPopulation<T>& pop,
                                            const Tol<T>& tol = Tol<T>::standard()) {
    std::vector<Diagnostic> out;
    validate_firm_allocation(a.firm1, pop, 1, tol, out);
    validate_firm_allocation(a.firm2, pop, 2, tol, out);
    for (std::size_t k = 0; k < pop.size(); ++k) {
        const T& v = pop.levels[k];
        IndexSet<T> h1 = a.firm1.hired_at(v);
        IndexSet<T> h2 = a.firm2.hired_at(v);
        if (!h1.intersect(h2).is_empty())
            out.push_back({DiagnosticKind::OverlappingHires, 0, ScalarTraits<T>::to_double(v),
                           "firms hire overlapping index sets"});
        if (!tol.leq(h1.measure() + h2.measure(), T(1)))
            out.push_back({DiagnosticKind::InfeasibleMass, 0, ScalarTraits<T>::to_double(v),
                           "combined hired measure exceeds supply"});
    }
    return out;
}

}  // namespace monowage
