#pragma once
#include <stdexcept>
#include <vector>

#include "monowage/allocation.hpp"
#include "monowage/menu.hpp"
#include "monowage/numeric.hpp"

namespace monowage {

// Worker-side behavior that the model leaves open: how equal-wage contests are
// split (leftmost theta share by measure to firm 1) and whether a wage of
// exactly zero beats unemployment (it does by default).
template <class T>
struct TiePolicy {
    T theta = ScalarTraits<T>::from_fraction(1, 2);
    bool accept_at_reservation = true;

    bool acceptable(const T& wage) const {
        return accept_at_reservation ? wage >= T(0) : wage > T(0);
    }
};

// Second stage of the game: every worker picks the best offer she holds.
// Workers offered by one firm take it (if acceptable); workers offered by both
// take the strictly higher wage; exact ties split the contested set with the
// leftmost theta fraction going to firm 1. Paid wage equals offered wage.
template <class T>
Allocation<T> induce_allocation(const OfferProfile<T>& offers, const MarketPopulation<T>& pop,
                                const TiePolicy<T>& policy = TiePolicy<T>{}) {
    {
        auto diags = validate_profile(offers, pop);
        if (!diags.empty()) throw std::invalid_argument("induce_allocation: invalid offer profile");
    }
    std::vector<AllocationEntry<T>> out1, out2;
    for (const auto& v : pop.levels) {
        IndexSet<T> o1 = offers.firm1.offered_at(v);
        IndexSet<T> o2 = offers.firm2.offered_at(v);
        if (o1.is_empty() && o2.is_empty()) continue;
        T w1 = offers.firm1.wage_at(v);
        T w2 = offers.firm2.wage_at(v);

        IndexSet<T> h1 = policy.acceptable(w1) ? o1.subtract(o2) : IndexSet<T>::empty();
        IndexSet<T> h2 = policy.acceptable(w2) ? o2.subtract(o1) : IndexSet<T>::empty();

        IndexSet<T> contested = o1.intersect(o2);
        if (!contested.is_empty()) {
            if (w1 > w2) {
                if (policy.acceptable(w1)) h1 = h1.unite(contested);
            } else if (w2 > w1) {
                if (policy.acceptable(w2)) h2 = h2.unite(contested);
            } else if (policy.acceptable(w1)) {
                IndexSet<T> share1 = contested.take_leftmost(policy.theta * contested.measure());
                h1 = h1.unite(share1);
                h2 = h2.unite(contested.subtract(share1));
            }
        }
        if (!h1.is_empty()) out1.push_back({v, h1, w1});
        if (!h2.is_empty()) out2.push_back({v, h2, w2});
    }
    return Allocation<T>{make_firm_allocation(std::move(out1)), make_firm_allocation(std::move(out2))};
}

}  // namespace monowage
