#pragma once
#include <algorithm>
#include <vector>

#include "monowage/allocation.hpp"
#include "monowage/index_set.hpp"
#include "monowage/market.hpp"

namespace monowage {

// One wage offer: the index set of a level's workers the firm addresses and
// the single wage offered to all of them.
template <class T>
struct OfferEntry {
    T level;
    IndexSet<T> offered;
    T wage;
    bool operator==(const OfferEntry&) const = default;
};

// A firm's whole offer schedule. Unoffered levels carry wage 0 by convention
// and are excluded from the monotonicity requirement.
template <class T>
struct OfferMenu {
    std::vector<OfferEntry<T>> entries;  // sorted by level, positive measure only

    const OfferEntry<T>* find(const T& level) const {
        for (const auto& e : entries)
            if (e.level == level) return &e;
        return nullptr;
    }
    IndexSet<T> offered_at(const T& level) const {
        const auto* e = find(level);
        return e ? e->offered : IndexSet<T>::empty();
    }
    T wage_at(const T& level) const {
        const auto* e = find(level);
        return e ? e->wage : T(0);
    }
    bool is_empty() const { return entries.empty(); }

    bool operator==(const OfferMenu&) const = default;
};

template <class T>
OfferMenu<T> make_offer_menu(std::vector<OfferEntry<T>> entries) {
    std::erase_if(entries, [](const OfferEntry<T>& e) { return e.offered.is_empty(); });
    std::sort(entries.begin(), entries.end(),
              [](const OfferEntry<T>& a, const OfferEntry<T>& b) { return a.level < b.level; });
    return OfferMenu<T>{std::move(entries)};
}

template <class T>
struct OfferProfile {
    OfferMenu<T> firm1;
    OfferMenu<T> firm2;

    const OfferMenu<T>& firm(int j) const { return j == 1 ? firm1 : firm2; }
    OfferMenu<T>& firm(int j) { return j == 1 ? firm1 : firm2; }

    bool operator==(const OfferProfile&) const = default;
};

template <class T>
void validate_menu(const OfferMenu<T>& menu, const MarketPopulation<T>& pop, int firm,
                   const Tol<T>& tol, std::vector<Diagnostic>& out) {
    const T* prev_level = nullptr;
    const T* prev_wage = nullptr;
    for (const auto& e : menu.entries) {
        double lv = ScalarTraits<T>::to_double(e.level);
        if (!pop.find_level(e.level))
            out.push_back({DiagnosticKind::UnknownLevel, firm, lv, "offer at level not in population"});
        if (prev_level && !(*prev_level < e.level))
            out.push_back({DiagnosticKind::DuplicateLevel, firm, lv, "duplicate or unsorted offer level"});
        if (e.wage < T(0))
            out.push_back({DiagnosticKind::BadMenuWage, firm, lv, "offer wage below zero"});
        if (prev_wage && !tol.leq(*prev_wage, e.wage))
            out.push_back({DiagnosticKind::NonMonotoneOffer, firm, lv,
                           "offer wage drops below a lower offered level's wage"});
        prev_level = &e.level;
        prev_wage = &e.wage;
    }
}

template <class T>
std::vector<Diagnostic> validate_profile(const OfferProfile<T>& profile,
                                         const MarketPopulation<T>& pop,
                                         const Tol<T>& tol = Tol<T>::standard()) {
    std::vector<Diagnostic> out;
    validate_menu(profile.firm1, pop, 1, tol, out);
    validate_menu(profile.firm2, pop, 2, tol, out);
    return out;
}

// Canonical profile inducing a given allocation: each firm offers exactly the
// index sets it employs at the wages it pays. Offer sets are disjoint, so no
// worker faces a contest and the induced outcome reproduces the allocation.
template <class T>
OfferProfile<T> profile_from_allocation(const Allocation<T>& a) {
    OfferProfile<T> p;
    for (int j : {1, 2}) {
        std::vector<OfferEntry<T>> es;
        for (const auto& e : a.firm(j).entries) es.push_back({e.level, e.hired, e.wage});
        p.firm(j) = make_offer_menu(std::move(es));
    }
    return p;
}

// Profile in which both firms offer every worker a wage equal to her
// productivity. Induces a Bertrand allocation under any tie policy.
template <class T>
OfferProfile<T> canonical_bertrand_profile(const MarketPopulation<T>& pop) {
    OfferProfile<T> p;
    for (int j : {1, 2}) {
        std::vector<OfferEntry<T>> es;
        for (const auto& v : pop.levels) es.push_back({v, IndexSet<T>::full(), v});
        p.firm(j) = make_offer_menu(std::move(es));
    }
    return p;
}

}  // namespace monowage
