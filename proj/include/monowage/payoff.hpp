#pragma once
#include <stdexcept>
#include <utility>
#include <vector>

#include "monowage/allocation.hpp"
#include "monowage/market.hpp"

namespace monowage {

template <class T>
struct ProfitReport {
    std::vector<std::pair<T, T>> per_level;  // (level, (v - w) * hired mass)
    T total{0};
};

// Profit of one firm: sum over levels of (v - wage) * hired measure * mass.
// Throws if the allocation names a level absent from the population.
template <class T>
ProfitReport<T> firm_profit(const FirmAllocation<T>& fa, const MarketPopulation<T>& pop) {
    ProfitReport<T> r;
    for (const auto& e : fa.entries) {
        auto k = pop.find_level(e.level);
        if (!k) throw std::invalid_argument("firm_profit: allocation level not in population");
        T contribution = (e.level - e.wage) * e.hired.measure() * pop.masses[*k];
        r.per_level.emplace_back(e.level, contribution);
        r.total += contribution;
    }
    return r;
}

enum class BertrandFail { FullEmployment, WageAtProductivity };

template <class T>
struct BertrandFailure {
    T level;
    BertrandFail which;
    int firm;  // 0 for the employment condition
};

template <class T>
struct BertrandCheck {
    bool ok{true};
    std::vector<BertrandFailure<T>> failures;
};

// Bertrand test: every level fully employed (|f1 + f2 - f| <= tol * f, i.e.
// combined hired measure within tol of 1) and every firm with hired measure
// above tol pays a wage within tol of the level's productivity.
template <class T>
BertrandCheck<T> is_bertrand(const Allocation<T>& a, const MarketPopulation<T>& pop, const T& tol) {
    BertrandCheck<T> c;
    for (std::size_t k = 0; k < pop.size(); ++k) {
        const T& v = pop.levels[k];
        T s1 = a.firm1.hired_measure_at(v);
        T s2 = a.firm2.hired_measure_at(v);
        if (abs_diff<T>(s1 + s2, T(1)) > tol) {
            c.ok = false;
            c.failures.push_back({v, BertrandFail::FullEmployment, 0});
        }
        for (int j : {1, 2}) {
            T sj = j == 1 ? s1 : s2;
            if (sj > tol && abs_diff<T>(a.firm(j).wage_at(v), v) > tol) {
                c.ok = false;
                c.failures.push_back({v, BertrandFail::WageAtProductivity, j});
            }
        }
    }
    return c;
}

}  // namespace monowage
