#pragma once
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "monowage/numeric.hpp"

namespace monowage {

// Productivity grid with a positive worker mass at each level. Levels are
// strictly increasing and lie in [0, 1]; masses discretize the worker density.
template <class T>
struct MarketPopulation {
    std::vector<T> levels;
    std::vector<T> masses;
    T total_mass{0};

    std::size_t size() const { return levels.size(); }

    std::optional<std::size_t> find_level(const T& v) const {
        for (std::size_t k = 0; k < levels.size(); ++k)
            if (levels[k] == v) return k;
        return std::nullopt;
    }
};

template <class T>
MarketPopulation<T> make_population(std::vector<T> levels, std::vector<T> masses) {
    if (levels.empty()) throw std::invalid_argument("population: no levels");
    if (levels.size() != masses.size())
        throw std::invalid_argument("population: levels and masses must have equal length");
    for (std::size_t k = 0; k < levels.size(); ++k) {
        if (levels[k] < T(0) || levels[k] > T(1))
            throw std::invalid_argument("population: levels must lie in [0,1]");
        if (k > 0 && !(levels[k - 1] < levels[k]))
            throw std::invalid_argument("population: levels must be strictly increasing");
        if (!(masses[k] > T(0))) throw std::invalid_argument("population: masses must be positive");
    }
    MarketPopulation<T> pop;
    pop.levels = std::move(levels);
    pop.masses = std::move(masses);
    for (const auto& m : pop.masses) pop.total_mass += m;
    return pop;
}

}  // namespace monowage
