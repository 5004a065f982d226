#pragma once
#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "monowage/blocking.hpp"
#include "monowage/choice.hpp"
#include "monowage/menu.hpp"
#include "monowage/payoff.hpp"

namespace monowage {

// Knobs for the best-response optimizer. The continuum's strict wage
// inequality has no minimal increment, so outbidding uses the finite eta; the
// candidate ladder defaults to {0, rival wages, rival wages + eta, grid
// productivities} and can be pinned explicitly to share a lattice with the
// oracle.
template <class T>
struct BestResponseParams {
    T eta = Tol<T>::standard().eta;
    std::optional<std::vector<T>> wage_candidates;
    TiePolicy<T> tie_policy{};
    Tol<T> tol = Tol<T>::standard();
};

namespace detail {

// Mass share of one level hireable at wage x against the rival's offer there:
// everyone the rival ignores, plus the rival's audience when strictly outbid,
// plus the theta share on an exact tie.
template <class T>
T hireable_share(const IndexSet<T>& rival_offered, const T& rival_wage, const T& x,
                 const TiePolicy<T>& policy, const Tol<T>& tol) {
    if (!policy.acceptable(x)) return T(0);
    T share = T(1) - rival_offered.measure();
    if (!rival_offered.is_empty()) {
        if (tol.strictly_less(rival_wage, x))
            share += rival_offered.measure();
        else if (x == rival_wage)
            share += policy.theta * rival_offered.measure();
    }
    return share;
}

template <class T>
std::vector<T> candidate_ladder(const OfferMenu<T>& rival, const MarketPopulation<T>& pop,
                                const BestResponseParams<T>& params) {
    if (params.wage_candidates) {
        auto w = *params.wage_candidates;
        std::sort(w.begin(), w.end());
        w.erase(std::unique(w.begin(), w.end()), w.end());
        return w;
    }
    std::vector<T> w;
    w.push_back(T(0));
    for (const auto& e : rival.entries) {
        w.push_back(e.wage);
        w.push_back(e.wage + params.eta);
    }
    for (const auto& v : pop.levels) w.push_back(v);
    std::sort(w.begin(), w.end());
    w.erase(std::unique(w.begin(), w.end()), w.end());
    return w;
}

}  // namespace detail

// Profit-maximizing monotone menu against a fixed rival menu. Per level and
// candidate wage the payoff is (v - x) * hireable mass, a level may be
// skipped, and offered wages must be non-decreasing across offered levels;
// solved by a running-max dynamic program over (level, wage index).
template <class T>
std::pair<OfferMenu<T>, T> best_response(const OfferMenu<T>& rival, const MarketPopulation<T>& pop,
                                         const BestResponseParams<T>& params = BestResponseParams<T>{}) {
    const std::vector<T> ladder = detail::candidate_ladder(rival, pop, params);
    const std::size_t n = pop.size();
    const std::size_t w = ladder.size();

    std::vector<IndexSet<T>> rival_sets(n);
    std::vector<T> rival_wages(n, T(0));
    for (std::size_t k = 0; k < n; ++k) {
        rival_sets[k] = rival.offered_at(pop.levels[k]);
        rival_wages[k] = rival.wage_at(pop.levels[k]);
    }
    auto value = [&](std::size_t k, const T& x) {
        T share = detail::hireable_share(rival_sets[k], rival_wages[k], x, params.tie_policy, params.tol);
        return (pop.levels[k] - x) * share * pop.masses[k];
    };

    // F[k][i]: best profit over levels < k with offered wages within
    // ladder[0..i]. Moves: lower the cap (0), skip level k-1 (1), offer
    // level k-1 at exactly ladder[i] (2).
    std::vector<std::vector<T>> F(n + 1, std::vector<T>(w, T(0)));
    std::vector<std::vector<unsigned char>> move(n + 1, std::vector<unsigned char>(w, 1));
    for (std::size_t k = 1; k <= n; ++k) {
        for (std::size_t i = 0; i < w; ++i) {
            T best = F[k - 1][i];
            unsigned char m = 1;
            T take = value(k - 1, ladder[i]);
            if (take > T(0) && F[k - 1][i] + take > best) {
                best = F[k - 1][i] + take;
                m = 2;
            }
            if (i > 0 && F[k][i - 1] > best) {
                best = F[k][i - 1];
                m = 0;
            }
            F[k][i] = best;
            move[k][i] = m;
        }
    }

    std::vector<OfferEntry<T>> entries;
    std::size_t k = n, i = w - 1;
    while (k > 0) {
        if (move[k][i] == 0) {
            --i;
        } else {
            if (move[k][i] == 2) {
                const T& x = ladder[i];
                IndexSet<T> offered = rival_sets[k - 1].complement();
                if (params.tol.strictly_less(rival_wages[k - 1], x) || x == rival_wages[k - 1])
                    offered = offered.unite(rival_sets[k - 1]);
                entries.push_back({pop.levels[k - 1], std::move(offered), x});
            }
            --k;
        }
    }
    return {make_offer_menu(std::move(entries)), F[n][w - 1]};
}

template <class T>
struct FirmEqReport {
    T current_profit{0};
    T best_profit{0};
    T gain{0};
    OfferMenu<T> witness;
};

template <class T>
struct EquilibriumReport {
    FirmEqReport<T> firm1, firm2;
    bool is_equilibrium = false;
    T tolerance{0};

    const FirmEqReport<T>& firm(int j) const { return j == 1 ? firm1 : firm2; }
};

// Nash check in menus: each firm's best-response gain against the other's
// posted menu must not exceed the tolerance.
template <class T>
EquilibriumReport<T> verify_equilibrium(const OfferProfile<T>& profile,
                                        const MarketPopulation<T>& pop,
                                        const BestResponseParams<T>& params, const T& tol_gain) {
    Allocation<T> induced = induce_allocation(profile, pop, params.tie_policy);
    EquilibriumReport<T> report;
    report.tolerance = tol_gain;
    bool ok = true;
    for (int j : {1, 2}) {
        FirmEqReport<T> fr;
        fr.current_profit = firm_profit(induced.firm(j), pop).total;
        auto [menu, best] = best_response(profile.firm(j == 1 ? 2 : 1), pop, params);
        fr.best_profit = best;
        fr.gain = best - fr.current_profit;
        fr.witness = std::move(menu);
        ok = ok && fr.gain <= tol_gain + params.tol.feas;
        (j == 1 ? report.firm1 : report.firm2) = std::move(fr);
    }
    report.is_equilibrium = ok;
    return report;
}

template <class T>
OfferMenu<T> menu_from_allocation(const FirmAllocation<T>& fa) {
    std::vector<OfferEntry<T>> es;
    for (const auto& e : fa.entries) es.push_back({e.level, e.hired, e.wage});
    return make_offer_menu(std::move(es));
}

template <class T>
struct DeviationResult {
    OfferMenu<T> menu;
    BlockProposal<T> proposal;  // wages possibly bumped by eta to break ties
    bool bumped = false;
};

// Converts a verified block into a deviation menu for the blocker: offer
// exactly the index sets the alternative hires, at its wages. Workers the
// alternative poaches hold rival offers it strictly beats, the unemployed
// hold none, and retained workers keep at least their old wage, so inducement
// reproduces the alternative; exact wage ties with the rival's offers are
// broken by an eta bump followed by re-verification.
template <class T>
DeviationResult<T> block_to_deviation(const Allocation<T>& a, const BlockProposal<T>& proposal,
                                      const OfferProfile<T>& profile, const MarketPopulation<T>& pop,
                                      const TiePolicy<T>& policy = TiePolicy<T>{},
                                      const Tol<T>& tol = Tol<T>::standard()) {
    if (!(induce_allocation(profile, pop, policy) == a))
        throw std::invalid_argument("block_to_deviation: profile does not induce the allocation");
    if (!verify_block(a, proposal, pop, tol).valid)
        throw std::invalid_argument("block_to_deviation: proposal does not verify");

    const int j = proposal.blocker;
    BlockProposal<T> cur = proposal;
    bool bumped = false;
    for (int attempt = 0; attempt < 8; ++attempt) {
        OfferMenu<T> menu = menu_from_allocation(cur.alternative);
        OfferProfile<T> trial = profile;
        trial.firm(j) = menu;
        Allocation<T> sim = induce_allocation(trial, pop, policy);
        if (sim.firm(j) == cur.alternative) {
            if (bumped && !verify_block(a, cur, pop, tol).valid)
                throw std::runtime_error("block_to_deviation: bumped proposal no longer verifies");
            return {std::move(menu), std::move(cur), bumped};
        }
        std::vector<AllocationEntry<T>> entries = cur.alternative.entries;
        bool changed = false;
        for (auto& e : entries) {
            if (!(sim.firm(j).hired_at(e.level) == e.hired)) {
                e.wage += tol.eta;
                changed = true;
            }
        }
        for (std::size_t i = 1; i < entries.size(); ++i)
            if (entries[i].wage < entries[i - 1].wage) entries[i].wage = entries[i - 1].wage;
        if (!changed) break;
        cur.alternative = make_firm_allocation(std::move(entries));
        bumped = true;
    }
    throw std::runtime_error("block_to_deviation: could not reproduce the blocking allocation");
}

template <class T>
struct DynamicsRound {
    int round;
    OfferProfile<T> profile;
    T profit1{0}, profit2{0};
    bool changed1 = false, changed2 = false;
};

// Alternating best-response updates, firm 1 then firm 2 each round, adopting
// a new menu only on strict improvement. Exploratory; stops at the first
// round with no change or after max_iter rounds.
template <class T>
std::vector<DynamicsRound<T>> best_response_dynamics(OfferProfile<T> profile,
                                                     const MarketPopulation<T>& pop,
                                                     const BestResponseParams<T>& params,
                                                     int max_iter) {
    std::vector<DynamicsRound<T>> trace;
    auto profits = [&](const OfferProfile<T>& p) {
        Allocation<T> ind = induce_allocation(p, pop, params.tie_policy);
        return std::pair<T, T>{firm_profit(ind.firm1, pop).total, firm_profit(ind.firm2, pop).total};
    };
    auto [p1, p2] = profits(profile);
    trace.push_back({0, profile, p1, p2, false, false});
    for (int r = 1; r <= max_iter; ++r) {
        DynamicsRound<T> row;
        row.round = r;
        for (int j : {1, 2}) {
            int o = j == 1 ? 2 : 1;
            Allocation<T> ind = induce_allocation(profile, pop, params.tie_policy);
            T current = firm_profit(ind.firm(j), pop).total;
            auto [menu, best] = best_response(profile.firm(o), pop, params);
            if (params.tol.strict_gain(current, best) && !(menu == profile.firm(j))) {
                profile.firm(j) = std::move(menu);
                (j == 1 ? row.changed1 : row.changed2) = true;
            }
        }
        auto [q1, q2] = profits(profile);
        row.profile = profile;
        row.profit1 = q1;
        row.profit2 = q2;
        trace.push_back(std::move(row));
        if (!trace.back().changed1 && !trace.back().changed2) break;
    }
    return trace;
}

}  // namespace monowage
