#pragma once
#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "monowage/blocking.hpp"
#include "monowage/equilibrium.hpp"

namespace monowage {

class OracleCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Finite relaxation of the action space used for brute-force search: one
// shared sorted wage list plus the hired-fraction choices per level. The
// default derives wages from the allocation under test so that every case
// construction has an in-lattice counterpart (own wages, eta-outbids of them,
// the zero wage, and the grid productivities).
template <class T>
struct SearchLattice {
    std::vector<T> wage_candidates;
    std::vector<T> mass_fractions;
    unsigned long long cap = 2000000;

    static SearchLattice standard(const Allocation<T>& a, const MarketPopulation<T>& pop,
                                  const T& eta) {
        SearchLattice lat;
        lat.wage_candidates.push_back(T(0));
        for (int j : {1, 2})
            for (const auto& e : a.firm(j).entries) {
                lat.wage_candidates.push_back(e.wage);
                lat.wage_candidates.push_back(e.wage + eta);
            }
        for (const auto& v : pop.levels) lat.wage_candidates.push_back(v);
        std::sort(lat.wage_candidates.begin(), lat.wage_candidates.end());
        lat.wage_candidates.erase(
            std::unique(lat.wage_candidates.begin(), lat.wage_candidates.end()),
            lat.wage_candidates.end());
        lat.mass_fractions = {T(0), ScalarTraits<T>::from_fraction(1, 2), T(1)};
        return lat;
    }
};

namespace detail {

template <class T>
unsigned long long proposal_count(const SearchLattice<T>& lat, std::size_t n) {
    unsigned long long positive = 0;
    for (const auto& f : lat.mass_fractions)
        if (f > T(0)) ++positive;
    unsigned long long per_level = 1 + positive * lat.wage_candidates.size();
    unsigned long long total = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (total > (~0ULL) / per_level) return ~0ULL;
        total *= per_level;
    }
    return total;
}

// Depth-first, lexicographic walk over all monotone (fraction, wage)
// assignments for one firm: fraction 0 first, then positive fractions in
// ascending order, each with wages ascending from the monotonicity floor.
// fn(proposal) returns true to stop.
template <class T, class Fn>
bool enumerate_firm_proposals(int firm, const MarketPopulation<T>& pop,
                              const SearchLattice<T>& lat, Fn&& fn) {
    const std::size_t n = pop.size();
    std::vector<AllocationEntry<T>> chosen;
    chosen.reserve(n);

    auto rec = [&](auto&& self, std::size_t k, const T* wage_floor) -> bool {
        if (k == n) {
            BlockProposal<T> p{firm, make_firm_allocation(chosen), CaseLabel::OracleFound, {}};
            return fn(p);
        }
        if (self(self, k + 1, wage_floor)) return true;  // fraction 0: level untouched
        for (const auto& frac : lat.mass_fractions) {
            if (!(frac > T(0))) continue;
            for (const auto& w : lat.wage_candidates) {
                if (wage_floor && w < *wage_floor) continue;
                chosen.push_back({pop.levels[k], IndexSet<T>::interval(T(0), frac), w});
                bool stop = self(self, k + 1, &chosen.back().wage);
                chosen.pop_back();
                if (stop) return true;
            }
        }
        return false;
    };
    return rec(rec, 0, nullptr);
}

}  // namespace detail

// Visits every lattice proposal for firm 1 then firm 2 in deterministic
// lexicographic order, with the verdict of each. fn returning true stops the
// walk. Throws when the enumeration would exceed the lattice cap.
template <class T, class Fn>
void oracle_for_each_proposal(const Allocation<T>& a, const MarketPopulation<T>& pop,
                              const SearchLattice<T>& lat, const Tol<T>& tol, Fn&& fn) {
    unsigned long long count = detail::proposal_count(lat, pop.size());
    if (count > lat.cap / 2) throw OracleCapExceeded("oracle: lattice enumeration exceeds cap");
    for (int firm : {1, 2}) {
        bool stopped = detail::enumerate_firm_proposals<T>(
            firm, pop, lat, [&](const BlockProposal<T>& p) {
                BlockVerdict<T> verdict = verify_block(a, p, pop, tol);
                return fn(p, verdict);
            });
        if (stopped) break;
    }
}

// First lattice proposal that verifies as a block, if any.
template <class T>
std::optional<BlockProposal<T>> oracle_find_block(const Allocation<T>& a,
                                                  const MarketPopulation<T>& pop,
                                                  const SearchLattice<T>& lat,
                                                  const Tol<T>& tol = Tol<T>::standard()) {
    std::optional<BlockProposal<T>> found;
    oracle_for_each_proposal(a, pop, lat, tol,
                             [&](const BlockProposal<T>& p, const BlockVerdict<T>& v) {
                                 if (v.valid) {
                                     found = p;
                                     return true;
                                 }
                                 return false;
                             });
    return found;
}

template <class T>
bool oracle_is_core(const Allocation<T>& a, const MarketPopulation<T>& pop,
                    const SearchLattice<T>& lat, const Tol<T>& tol = Tol<T>::standard()) {
    return !oracle_find_block(a, pop, lat, tol).has_value();
}

// Brute-force best response over the lattice wages: enumerates every
// non-decreasing wage assignment, offers each level to everyone hireable at
// its wage whenever that yields strictly positive value, and keeps the first
// maximal assignment found. Ground truth for the dynamic program.
template <class T>
std::pair<OfferMenu<T>, T> oracle_best_response(const OfferMenu<T>& rival,
                                                const MarketPopulation<T>& pop,
                                                const SearchLattice<T>& lat,
                                                const TiePolicy<T>& policy = TiePolicy<T>{},
                                                const Tol<T>& tol = Tol<T>::standard()) {
    const std::size_t n = pop.size();
    const std::vector<T>& W = lat.wage_candidates;
    if (W.empty()) throw std::invalid_argument("oracle_best_response: empty wage lattice");
    {
        // Non-decreasing tuples: C(n + |W| - 1, n); keep within the cap.
        unsigned long long tuples = 1;
        for (std::size_t k = 1; k <= n; ++k) {
            tuples = tuples * (W.size() + k - 1) / k;
            if (tuples > lat.cap) throw OracleCapExceeded("oracle: tuple enumeration exceeds cap");
        }
    }

    std::vector<IndexSet<T>> rsets(n);
    std::vector<T> rwages(n, T(0));
    for (std::size_t k = 0; k < n; ++k) {
        rsets[k] = rival.offered_at(pop.levels[k]);
        rwages[k] = rival.wage_at(pop.levels[k]);
    }
    auto value = [&](std::size_t k, const T& x) {
        T share = detail::hireable_share(rsets[k], rwages[k], x, policy, tol);
        return (pop.levels[k] - x) * share * pop.masses[k];
    };

    std::vector<std::size_t> assign(n, 0), best_assign;
    bool have_best = false;
    T best_profit(0);
    auto rec = [&](auto&& self, std::size_t k, std::size_t min_i, T acc) -> void {
        if (k == n) {
            if (!have_best || acc > best_profit) {
                have_best = true;
                best_profit = acc;
                best_assign = assign;
            }
            return;
        }
        for (std::size_t i = min_i; i < W.size(); ++i) {
            assign[k] = i;
            T val = value(k, W[i]);
            self(self, k + 1, i, val > T(0) ? T(acc + val) : acc);
        }
    };
    rec(rec, 0, 0, T(0));

    std::vector<OfferEntry<T>> entries;
    for (std::size_t k = 0; k < n; ++k) {
        const T& x = W[best_assign[k]];
        if (!(value(k, x) > T(0))) continue;
        IndexSet<T> offered = rsets[k].complement();
        if (tol.strictly_less(rwages[k], x) || x == rwages[k]) offered = offered.unite(rsets[k]);
        entries.push_back({pop.levels[k], std::move(offered), x});
    }
    return {make_offer_menu(std::move(entries)), best_profit};
}

}  // namespace monowage
