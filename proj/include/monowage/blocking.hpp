#pragma once
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "monowage/allocation.hpp"
#include "monowage/market.hpp"
#include "monowage/payoff.hpp"

namespace monowage {

// The six exhaustive ways an allocation can fail the Bertrand conditions,
// each paired with a blocking construction, plus the label used for proposals
// found by exhaustive search.
enum class CaseLabel {
    Overpaid,                     // some hired workers earn more than their productivity
    UnderemployedUnderpaid,       // spare workers exist and the firm underpays
    UnderemployedAtProductivity,  // spare workers exist and the firm pays exactly v
    MonopsonyUnderpay,            // sole employer of a level underpays it
    DuopsonyUnderpay,             // both firms employ a level, nobody pays v
    AsymmetricPoach,              // one firm pays v, the rival underpays the same level
    OracleFound,                  // produced by exhaustive search
};

inline const char* case_label_name(CaseLabel c) {
    switch (c) {
        case CaseLabel::Overpaid: return "overpaid";
        case CaseLabel::UnderemployedUnderpaid: return "underemployed-underpaid";
        case CaseLabel::UnderemployedAtProductivity: return "underemployed-at-productivity";
        case CaseLabel::MonopsonyUnderpay: return "monopsony-underpay";
        case CaseLabel::DuopsonyUnderpay: return "duopsony-underpay";
        case CaseLabel::AsymmetricPoach: return "asymmetric-poach";
        case CaseLabel::OracleFound: return "oracle-found";
    }
    return "unknown";
}

// Candidate deviation for a single firm: replace its allocation wholesale.
template <class T>
struct BlockProposal {
    int blocker = 1;
    FirmAllocation<T> alternative;
    CaseLabel case_label = CaseLabel::OracleFound;
    std::map<std::string, T> parameters;
};

template <class T>
struct LevelCondition {
    T level;
    int condition;  // 1..4 = first satisfied block condition, 0 = none holds
};

template <class T>
struct BlockVerdict {
    std::vector<LevelCondition<T>> per_level;
    T profit_before{0};
    T profit_after{0};
    bool valid = false;
    std::vector<std::string> problems;

    T gain() const { return profit_after - profit_before; }
};

class BlockConstructionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Checks a proposal against the block definition. Every population level must
// satisfy one of the four conditions (with w and f taken as paid wage and
// hired mass, zero off support), the alternative must itself be a valid firm
// allocation, and the blocker's profit must strictly rise.
template <class T>
BlockVerdict<T> verify_block(const Allocation<T>& a, const BlockProposal<T>& proposal,
                             const MarketPopulation<T>& pop,
                             const Tol<T>& tol = Tol<T>::standard()) {
    BlockVerdict<T> verdict;
    const int j = proposal.blocker;
    const int o = j == 1 ? 2 : 1;
    const FirmAllocation<T>& alt = proposal.alternative;

    std::vector<Diagnostic> diags;
    validate_firm_allocation(alt, pop, j, tol, diags);
    for (const auto& d : diags)
        verdict.problems.push_back(std::string(diagnostic_kind_name(d.kind)) + ": " + d.detail);

    bool all_covered = true;
    for (std::size_t k = 0; k < pop.size(); ++k) {
        const T& v = pop.levels[k];
        T wj = a.firm(j).wage_at(v);
        T wo = a.firm(o).wage_at(v);
        T sj = a.firm(j).hired_measure_at(v);
        T so = a.firm(o).hired_measure_at(v);
        T st = alt.hired_measure_at(v);
        T wt = alt.wage_at(v);

        int cond = 0;
        if (tol.leq(wj, wt) && tol.strictly_less(wo, wt))
            cond = 1;
        else if (tol.leq(wj, wt) && tol.leq(st + so, T(1)))
            cond = 2;
        else if (tol.strictly_less(wo, wt) && tol.leq(st + sj, T(1)))
            cond = 3;
        else if (tol.leq(st + sj + so, T(1)))
            cond = 4;
        verdict.per_level.push_back({v, cond});
        if (cond == 0) all_covered = false;
    }

    try {
        verdict.profit_before = firm_profit(a.firm(j), pop).total;
        verdict.profit_after = firm_profit(alt, pop).total;
    } catch (const std::invalid_argument& e) {
        verdict.problems.push_back(e.what());
        verdict.valid = false;
        return verdict;
    }
    verdict.valid = verdict.problems.empty() && all_covered &&
                    tol.strict_gain(verdict.profit_before, verdict.profit_after);
    return verdict;
}

template <class T>
struct CaseFlag {
    CaseLabel label;
    int firm;
    std::vector<std::size_t> level_ids;  // indices into pop.levels
};

namespace detail {

// Per-level snapshot of an allocation against its population.
template <class T>
struct LevelGrid {
    std::vector<T> v, m;
    std::vector<T> w[3], s[3];            // indexed by firm 1/2
    std::vector<IndexSet<T>> hired[3];
    std::size_t n = 0;

    LevelGrid(const Allocation<T>& a, const MarketPopulation<T>& pop) {
        n = pop.size();
        v = pop.levels;
        m = pop.masses;
        for (int j : {1, 2}) {
            w[j].reserve(n);
            s[j].reserve(n);
            hired[j].reserve(n);
            for (std::size_t k = 0; k < n; ++k) {
                IndexSet<T> h = a.firm(j).hired_at(v[k]);
                s[j].push_back(h.measure());
                w[j].push_back(a.firm(j).wage_at(v[k]));
                hired[j].push_back(std::move(h));
            }
        }
    }

    // Largest wage firm j pays strictly below level index k (0 when none).
    T sup_wage_below(int j, std::size_t k) const {
        T best(0);
        for (std::size_t i = 0; i < k; ++i)
            if (w[j][i] > best) best = w[j][i];
        return best;
    }
    // Largest wage firm j pays at or below level index k.
    T sup_wage_through(int j, std::size_t k) const {
        T best = sup_wage_below(j, k);
        return w[j][k] > best ? w[j][k] : best;
    }
    T unemployed_share(std::size_t k) const { return T(1) - s[1][k] - s[2][k]; }
    IndexSet<T> unemployed_set(std::size_t k) const {
        return hired[1][k].unite(hired[2][k]).complement();
    }
};

}  // namespace detail

// Flags every (case, level subset, firm) whose predicate holds, in proof
// order. The predicates use the classification tolerance symmetrically with
// is_bertrand: the result is empty exactly when the allocation is Bertrand.
template <class T>
std::vector<CaseFlag<T>> classify_non_bertrand(const Allocation<T>& a,
                                               const MarketPopulation<T>& pop, const T& tol) {
    detail::LevelGrid<T> g(a, pop);
    std::vector<CaseFlag<T>> flags;
    auto scan = [&](CaseLabel label, auto pred) {
        for (int j : {1, 2}) {
            CaseFlag<T> f{label, j, {}};
            for (std::size_t k = 0; k < g.n; ++k)
                if (pred(j, k)) f.level_ids.push_back(k);
            if (!f.level_ids.empty()) flags.push_back(std::move(f));
        }
    };
    const T one(1);
    auto underemployed = [&](std::size_t k) { return g.unemployed_share(k) > tol; };

    scan(CaseLabel::Overpaid, [&](int j, std::size_t k) { return g.w[j][k] > g.v[k] + tol; });
    scan(CaseLabel::UnderemployedUnderpaid, [&](int j, std::size_t k) {
        return underemployed(k) && g.w[j][k] < g.v[k] - tol;
    });
    scan(CaseLabel::UnderemployedAtProductivity, [&](int j, std::size_t k) {
        return underemployed(k) && abs_diff<T>(g.w[j][k], g.v[k]) <= tol;
    });
    scan(CaseLabel::MonopsonyUnderpay, [&](int j, std::size_t k) {
        return g.w[j][k] < g.v[k] - tol && g.s[j][k] >= one - tol - tol;
    });
    scan(CaseLabel::DuopsonyUnderpay, [&](int j, std::size_t k) {
        int o = j == 1 ? 2 : 1;
        return g.s[j][k] > tol && g.s[j][k] < one - tol && g.w[j][k] < g.v[k] - tol &&
               g.w[o][k] <= g.w[j][k] + tol;
    });
    scan(CaseLabel::AsymmetricPoach, [&](int j, std::size_t k) {
        int o = j == 1 ? 2 : 1;
        return abs_diff<T>(g.w[j][k], g.v[k]) <= tol && g.w[o][k] < g.v[k] - tol &&
               g.s[o][k] > tol && g.s[o][k] < one - tol;
    });
    return flags;
}

// Options for pinning the free parameters of a construction, used by tests
// and exposed through the CLI; the default schedule starts at half the
// available slack and halves on verification failure.
template <class T>
struct ConstructOptions {
    std::optional<T> epsilon_prime;
    std::optional<T> case6_margin;
    int max_halvings = 40;
};

namespace detail {

template <class T>
FirmAllocation<T> grid_allocation(const LevelGrid<T>& g,
                                  std::vector<std::pair<std::size_t, std::pair<IndexSet<T>, T>>> cells) {
    std::vector<AllocationEntry<T>> entries;
    for (auto& [k, cell] : cells)
        if (!cell.first.is_empty()) entries.push_back({g.v[k], std::move(cell.first), cell.second});
    return make_firm_allocation(std::move(entries));
}

template <class T>
std::optional<BlockProposal<T>> checked(const Allocation<T>& a, const MarketPopulation<T>& pop,
                                        const Tol<T>& tol, BlockProposal<T> proposal) {
    if (verify_block(a, proposal, pop, tol).valid) return proposal;
    return std::nullopt;
}

// Case 1: fire every worker on the flagged (overpaid) levels, keep the rest.
template <class T>
std::optional<BlockProposal<T>> construct_case1(const Allocation<T>& a,
                                                const MarketPopulation<T>& pop,
                                                const LevelGrid<T>& g, const CaseFlag<T>& flag,
                                                const Tol<T>& tol, const ConstructOptions<T>&) {
    const int j = flag.firm;
    std::vector<bool> fired(g.n, false);
    for (auto k : flag.level_ids) fired[k] = true;
    std::vector<std::pair<std::size_t, std::pair<IndexSet<T>, T>>> cells;
    for (std::size_t k = 0; k < g.n; ++k)
        if (!fired[k] && !g.hired[j][k].is_empty()) cells.push_back({k, {g.hired[j][k], g.w[j][k]}});
    BlockProposal<T> p{j, grid_allocation(g, std::move(cells)), CaseLabel::Overpaid, {}};
    return checked(a, pop, tol, std::move(p));
}

// Case 2: absorb all mass the rival does not hold, paying each level the
// running maximum of the firm's own wage schedule; existing workers keep
// their wages.
template <class T>
std::optional<BlockProposal<T>> construct_case2(const Allocation<T>& a,
                                                const MarketPopulation<T>& pop,
                                                const LevelGrid<T>& g, const CaseFlag<T>& flag,
                                                const Tol<T>& tol, const ConstructOptions<T>&) {
    const int j = flag.firm;
    const int o = j == 1 ? 2 : 1;
    std::vector<std::pair<std::size_t, std::pair<IndexSet<T>, T>>> cells;
    T runmax(0);
    for (std::size_t k = 0; k < g.n; ++k) {
        if (g.w[j][k] > runmax) runmax = g.w[j][k];
        IndexSet<T> h = g.hired[o][k].complement();
        if (!h.is_empty()) cells.push_back({k, {std::move(h), runmax}});
    }
    BlockProposal<T> p{j, grid_allocation(g, std::move(cells)), CaseLabel::UnderemployedUnderpaid, {}};
    return checked(a, pop, tol, std::move(p));
}

// Case 3: over the consecutive level run with the best verified gain, fire
// the firm's own workers and hire all unemployed mass at the largest own wage
// paid strictly below the run.
template <class T>
std::optional<BlockProposal<T>> construct_case3(const Allocation<T>& a,
                                                const MarketPopulation<T>& pop,
                                                const LevelGrid<T>& g, const CaseFlag<T>& flag,
                                                const Tol<T>& tol, const ConstructOptions<T>&) {
    const int j = flag.firm;
    std::vector<bool> flagged(g.n, false);
    for (auto k : flag.level_ids) flagged[k] = true;

    bool have_best = false;
    std::size_t best_a = 0, best_b = 0;
    T best_gain(0), best_wage(0);
    for (std::size_t lo = 0; lo < g.n; ++lo) {
        T wage = g.sup_wage_below(j, lo);
        bool touches_flag = false;
        T gain(0);
        for (std::size_t hi = lo; hi < g.n; ++hi) {
            touches_flag = touches_flag || flagged[hi];
            gain += (g.v[hi] - wage) * g.unemployed_share(hi) * g.m[hi];
            gain -= (g.v[hi] - g.w[j][hi]) * g.s[j][hi] * g.m[hi];
            if (touches_flag && (!have_best || gain > best_gain)) {
                have_best = true;
                best_a = lo;
                best_b = hi;
                best_gain = gain;
                best_wage = wage;
            }
        }
    }
    if (!have_best) return std::nullopt;

    std::vector<std::pair<std::size_t, std::pair<IndexSet<T>, T>>> cells;
    for (std::size_t k = 0; k < g.n; ++k) {
        if (k >= best_a && k <= best_b) {
            IndexSet<T> h = g.unemployed_set(k);
            if (!h.is_empty()) cells.push_back({k, {std::move(h), best_wage}});
        } else if (!g.hired[j][k].is_empty()) {
            cells.push_back({k, {g.hired[j][k], g.w[j][k]}});
        }
    }
    BlockProposal<T> p{j, grid_allocation(g, std::move(cells)),
                       CaseLabel::UnderemployedAtProductivity,
                       {{"v_lo", g.v[best_a]}, {"v_hi", g.v[best_b]}, {"wage", best_wage}}};
    return checked(a, pop, tol, std::move(p));
}

// Enumerates consecutive runs of flagged levels, longest first from each
// start, calling fn(a, b) until it returns a proposal.
template <class T, class Fn>
std::optional<BlockProposal<T>> for_each_flag_run(const std::vector<bool>& flagged, Fn fn) {
    const std::size_t n = flagged.size();
    for (std::size_t lo = 0; lo < n; ++lo) {
        if (!flagged[lo]) continue;
        std::size_t max_hi = lo;
        while (max_hi + 1 < n && flagged[max_hi + 1]) ++max_hi;
        for (std::size_t hi = max_hi + 1; hi-- > lo;) {
            if (auto p = fn(lo, hi)) return p;
            if (hi == lo) break;
        }
    }
    return std::nullopt;
}

// Case 4: the rival of a monopsonist poaches a whole flagged run, paying the
// run max(w_p, w_j + eps') and lifting its retained higher levels just enough
// to stay monotone (subcase 4.1); if no such poach verifies, the monopsonist
// instead absorbs levels above the run where the rival underpays relative to
// the monopsonist's own wage (subcase 4.2).
template <class T>
std::optional<BlockProposal<T>> construct_case4(const Allocation<T>& a,
                                                const MarketPopulation<T>& pop,
                                                const LevelGrid<T>& g, const CaseFlag<T>& flag,
                                                const Tol<T>& tol, const ConstructOptions<T>& opt) {
    const int j = flag.firm;
    const int o = j == 1 ? 2 : 1;
    std::vector<bool> flagged(g.n, false);
    for (auto k : flag.level_ids) flagged[k] = true;

    auto attempt_41 = [&](std::size_t lo, std::size_t hi, const T& eps) -> std::optional<BlockProposal<T>> {
        T w_p = g.sup_wage_below(o, lo);
        std::vector<std::pair<std::size_t, std::pair<IndexSet<T>, T>>> cells;
        for (std::size_t k = 0; k < lo; ++k)
            if (!g.hired[o][k].is_empty()) cells.push_back({k, {g.hired[o][k], g.w[o][k]}});
        T inside_max(0);
        for (std::size_t k = lo; k <= hi; ++k) {
            T wage = w_p;
            if (g.w[j][k] + eps > wage) wage = g.w[j][k] + eps;
            if (g.s[o][k] > T(0) && g.w[o][k] + eps > wage) wage = g.w[o][k] + eps;
            if (wage < inside_max) wage = inside_max;
            inside_max = wage;
            cells.push_back({k, {IndexSet<T>::full(), wage}});
        }
        T lift = g.sup_wage_through(j, hi) + eps;
        for (std::size_t k = hi + 1; k < g.n; ++k) {
            if (g.hired[o][k].is_empty()) continue;
            T wage = lift;
            if (g.w[o][k] > wage) wage = g.w[o][k];
            if (inside_max > wage) wage = inside_max;
            cells.push_back({k, {g.hired[o][k], wage}});
        }
        BlockProposal<T> p{o, grid_allocation(g, std::move(cells)), CaseLabel::MonopsonyUnderpay,
                           {{"v_lo", g.v[lo]},
                            {"v_hi", g.v[hi]},
                            {"epsilon_prime", eps},
                            {"w_p", w_p}}};
        return checked(a, pop, tol, std::move(p));
    };

    auto p41 = for_each_flag_run<T>(flagged, [&](std::size_t lo, std::size_t hi) -> std::optional<BlockProposal<T>> {
        T slack = g.v[lo] - g.w[j][lo];
        for (std::size_t k = lo; k <= hi; ++k)
            if (g.v[k] - g.w[j][k] < slack) slack = g.v[k] - g.w[j][k];
        if (!(slack > T(0))) return std::nullopt;
        if (opt.epsilon_prime) return attempt_41(lo, hi, *opt.epsilon_prime);
        T eps = slack / T(2);
        for (int i = 0; i <= opt.max_halvings; ++i, eps /= T(2))
            if (auto p = attempt_41(lo, hi, eps)) return p;
        return std::nullopt;
    });
    if (p41) return p41;

    // Subcase 4.2: poach everything above the run wherever the rival pays
    // less than the monopsonist's standing wage there.
    return for_each_flag_run<T>(flagged, [&](std::size_t lo, std::size_t hi) -> std::optional<BlockProposal<T>> {
        (void)lo;
        std::vector<std::size_t> cheap;
        for (std::size_t k = hi + 1; k < g.n; ++k)
            if (g.s[j][k] > T(0) && g.s[o][k] > T(0) && tol.strictly_less(g.w[o][k], g.w[j][k]) &&
                tol.strict_gain(g.w[j][k], g.v[k]))
                cheap.push_back(k);
        if (cheap.empty()) return std::nullopt;
        std::vector<std::pair<std::size_t, std::pair<IndexSet<T>, T>>> cells;
        std::size_t c = 0;
        for (std::size_t k = 0; k < g.n; ++k) {
            if (c < cheap.size() && cheap[c] == k) {
                cells.push_back({k, {IndexSet<T>::full(), g.w[j][k]}});
                ++c;
            } else if (!g.hired[j][k].is_empty()) {
                cells.push_back({k, {g.hired[j][k], g.w[j][k]}});
            }
        }
        BlockProposal<T> p{j, grid_allocation(g, std::move(cells)), CaseLabel::MonopsonyUnderpay,
                           {{"v_hi", g.v[hi]}}};
        return checked(a, pop, tol, std::move(p));
    });
}

// Case 5: hire every worker on the flagged levels and raise the whole wage
// schedule by eps'; the new hires' margin dominates the payroll increase for
// small enough eps'.
template <class T>
std::optional<BlockProposal<T>> construct_case5(const Allocation<T>& a,
                                                const MarketPopulation<T>& pop,
                                                const LevelGrid<T>& g, const CaseFlag<T>& flag,
                                                const Tol<T>& tol, const ConstructOptions<T>& opt) {
    const int j = flag.firm;
    std::vector<bool> flagged(g.n, false);
    T slack(0);
    bool first = true;
    for (auto k : flag.level_ids) {
        flagged[k] = true;
        T s = g.v[k] - g.w[j][k];
        if (first || s < slack) slack = s;
        first = false;
    }
    if (!(slack > T(0))) return std::nullopt;

    auto attempt = [&](const T& eps) -> std::optional<BlockProposal<T>> {
        std::vector<std::pair<std::size_t, std::pair<IndexSet<T>, T>>> cells;
        for (std::size_t k = 0; k < g.n; ++k) {
            if (flagged[k])
                cells.push_back({k, {IndexSet<T>::full(), g.w[j][k] + eps}});
            else if (!g.hired[j][k].is_empty())
                cells.push_back({k, {g.hired[j][k], g.w[j][k] + eps}});
        }
        BlockProposal<T> p{j, grid_allocation(g, std::move(cells)), CaseLabel::DuopsonyUnderpay,
                           {{"epsilon_prime", eps}}};
        return checked(a, pop, tol, std::move(p));
    };

    if (opt.epsilon_prime) return attempt(*opt.epsilon_prime);
    T eps = slack / T(2);
    for (int i = 0; i <= opt.max_halvings; ++i, eps /= T(2))
        if (auto p = attempt(eps)) return p;
    return std::nullopt;
}

// Case 6: over a run of flagged levels, fire the firm's own at-productivity
// workers and poach the rival's at a single wage that strictly beats every
// rival wage in the run while staying below the run's top productivity.
template <class T>
std::optional<BlockProposal<T>> construct_case6(const Allocation<T>& a,
                                                const MarketPopulation<T>& pop,
                                                const LevelGrid<T>& g, const CaseFlag<T>& flag,
                                                const Tol<T>& tol, const ConstructOptions<T>& opt) {
    const int j = flag.firm;
    const int o = j == 1 ? 2 : 1;
    std::vector<bool> flagged(g.n, false);
    for (auto k : flag.level_ids) flagged[k] = true;

    auto attempt = [&](std::size_t lo, std::size_t hi, const T& gap, const T& margin)
        -> std::optional<BlockProposal<T>> {
        T wage = g.v[hi] - gap + margin;
        T floor = g.sup_wage_below(j, lo);
        if (floor > wage) wage = floor;
        std::vector<std::pair<std::size_t, std::pair<IndexSet<T>, T>>> cells;
        for (std::size_t k = 0; k < g.n; ++k) {
            if (k >= lo && k <= hi) {
                if (!g.hired[o][k].is_empty()) cells.push_back({k, {g.hired[o][k], wage}});
            } else if (!g.hired[j][k].is_empty()) {
                cells.push_back({k, {g.hired[j][k], g.w[j][k]}});
            }
        }
        BlockProposal<T> p{j, grid_allocation(g, std::move(cells)), CaseLabel::AsymmetricPoach,
                           {{"v_lo", g.v[lo]},
                            {"v_hi", g.v[hi]},
                            {"poach_wage", wage},
                            {"delta", g.v[hi] - wage},
                            {"margin", margin}}};
        return checked(a, pop, tol, std::move(p));
    };

    return for_each_flag_run<T>(flagged, [&](std::size_t lo, std::size_t hi) -> std::optional<BlockProposal<T>> {
        T gap = g.v[lo] - g.w[o][lo];
        for (std::size_t k = lo; k <= hi; ++k)
            if (g.v[k] - g.w[o][k] < gap) gap = g.v[k] - g.w[o][k];
        if (!(gap > T(0))) return std::nullopt;
        if (opt.case6_margin) return attempt(lo, hi, gap, *opt.case6_margin);
        T margin = gap / T(3);
        for (int i = 0; i <= opt.max_halvings; ++i, margin /= T(2))
            if (auto p = attempt(lo, hi, gap, margin)) return p;
        return std::nullopt;
    });
}

template <class T>
std::optional<BlockProposal<T>> try_construct(const Allocation<T>& a, const CaseFlag<T>& flag,
                                              const MarketPopulation<T>& pop, const Tol<T>& tol,
                                              const ConstructOptions<T>& opt) {
    LevelGrid<T> g(a, pop);
    switch (flag.label) {
        case CaseLabel::Overpaid: return construct_case1(a, pop, g, flag, tol, opt);
        case CaseLabel::UnderemployedUnderpaid: return construct_case2(a, pop, g, flag, tol, opt);
        case CaseLabel::UnderemployedAtProductivity: return construct_case3(a, pop, g, flag, tol, opt);
        case CaseLabel::MonopsonyUnderpay: return construct_case4(a, pop, g, flag, tol, opt);
        case CaseLabel::DuopsonyUnderpay: return construct_case5(a, pop, g, flag, tol, opt);
        case CaseLabel::AsymmetricPoach: return construct_case6(a, pop, g, flag, tol, opt);
        case CaseLabel::OracleFound: break;
    }
    return std::nullopt;
}

}  // namespace detail

// Builds the blocking allocation for one classified case. Throws when no
// candidate verifies; with a verified predicate and nondegenerate slack that
// indicates a bug or a tolerance conflict, not an expected outcome.
template <class T>
BlockProposal<T> construct_block(const Allocation<T>& a, const CaseFlag<T>& flag,
                                 const MarketPopulation<T>& pop,
                                 const Tol<T>& tol = Tol<T>::standard(),
                                 const ConstructOptions<T>& opt = ConstructOptions<T>{}) {
    auto p = detail::try_construct(a, flag, pop, tol, opt);
    if (!p)
        throw BlockConstructionError(std::string("no verified candidate for case ") +
                                     case_label_name(flag.label));
    return *p;
}

// classify -> construct in case order 1..6 -> verify; the first verified
// proposal wins. Returns nothing exactly when the allocation is Bertrand at
// the classification tolerance.
template <class T>
std::optional<BlockProposal<T>> find_block(const Allocation<T>& a, const MarketPopulation<T>& pop,
                                           const T& classify_tol,
                                           const Tol<T>& tol = Tol<T>::standard()) {
    auto flags = classify_non_bertrand(a, pop, classify_tol);
    if (flags.empty()) return std::nullopt;
    for (const auto& flag : flags)
        if (auto p = detail::try_construct(a, flag, pop, tol, ConstructOptions<T>{})) return p;
    throw BlockConstructionError("allocation is non-Bertrand but no case construction verified");
}

}  // namespace monowage
