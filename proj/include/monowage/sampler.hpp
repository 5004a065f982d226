#pragma once
#include <cstdint>
#include <random>
#include <vector>

#include "monowage/allocation.hpp"
#include "monowage/market.hpp"
#include "monowage/menu.hpp"
#include "monowage/numeric.hpp"

namespace monowage {

// Deterministic sampling primitives. The generator is std::mt19937_64 (whose
// output sequence the C++ standard fixes), seeded per trial as
//   seed ^ (0x9E3779B97F4A7C15 * (trial + 1)),
// and all draws reduce raw 64-bit outputs with plain modulus, so traces
// reproduce bit-for-bit across platforms.
struct SampleRng {
    std::mt19937_64 eng;
    explicit SampleRng(std::uint64_t seed) : eng(seed) {}

    std::uint64_t below(std::uint64_t n) { return eng() % n; }
};

inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) {
    return master ^ (0x9E3779B97F4A7C15ULL * (trial + 1));
}

enum class MassKind { Uniform, RandomPositive };

// Random population on a dyadic grid: levels are distinct multiples of 1/256
// drawn from (0, 1], so float and rational instantiations see the same exact
// values. Masses are 1/n each or random multiples of 1/64.
template <class T>
MarketPopulation<T> sample_population(SampleRng& rng, int n, MassKind masses) {
    std::vector<int> ticks;
    while (static_cast<int>(ticks.size()) < n) {
        int t = 1 + static_cast<int>(rng.below(256));
        bool dup = false;
        for (int u : ticks) dup = dup || u == t;
        if (!dup) ticks.push_back(t);
    }
    std::sort(ticks.begin(), ticks.end());
    std::vector<T> levels, mass;
    for (int t : ticks) levels.push_back(ScalarTraits<T>::from_fraction(t, 256));
    for (int k = 0; k < n; ++k)
        mass.push_back(masses == MassKind::Uniform
                           ? ScalarTraits<T>::from_fraction(1, n)
                           : ScalarTraits<T>::from_fraction(1 + static_cast<long long>(rng.below(64)), 64));
    return make_population(std::move(levels), std::move(mass));
}

namespace detail {

// Monotone wage path on the chosen support: running maximum of dyadic draws
// bounded by scale/64 increments.
template <class T>
std::vector<T> monotone_wages(SampleRng& rng, std::size_t n, long long scale_num, long long scale_den) {
    std::vector<T> w(n, T(0));
    T run(0);
    for (std::size_t k = 0; k < n; ++k) {
        T draw = ScalarTraits<T>::from_fraction(
            static_cast<long long>(rng.below(65)) * scale_num, 64 * scale_den);
        if (draw > run) run = draw;
        w[k] = run;
    }
    return w;
}

}  // namespace detail

// Allocation sampler modes. Mode 0 yields exact Bertrand allocations; the
// others target each failure case so experiment batches exercise the whole
// classification.
enum class AllocationMode {
    Bertrand = 0,
    RandomValid = 1,
    Overpaid = 2,
    UnderemployedAtProductivity = 3,
    MonopsonyUnderpay = 4,
    DuopsonyUnderpay = 5,
    AsymmetricPoach = 6,
};

constexpr int kAllocationModeCount = 7;

template <class T>
Allocation<T> sample_allocation(SampleRng& rng, const MarketPopulation<T>& pop, AllocationMode mode) {
    const std::size_t n = pop.size();
    std::vector<AllocationEntry<T>> e1, e2;
    const T half = ScalarTraits<T>::from_fraction(1, 2);

    switch (mode) {
        case AllocationMode::Bertrand: {
            for (std::size_t k = 0; k < n; ++k) {
                const T& v = pop.levels[k];
                switch (rng.below(3)) {
                    case 0: e1.push_back({v, IndexSet<T>::full(), v}); break;
                    case 1: e2.push_back({v, IndexSet<T>::full(), v}); break;
                    default:
                        e1.push_back({v, IndexSet<T>::interval(T(0), half), v});
                        e2.push_back({v, IndexSet<T>::interval(half, T(1)), v});
                }
            }
            break;
        }
        case AllocationMode::RandomValid: {
            // Independent monotone wage paths; random disjoint shares, firm 1
            // from the left and firm 2 from the right of the index space.
            auto w1 = detail::monotone_wages<T>(rng, n, 5, 4);  // wages may exceed v
            auto w2 = detail::monotone_wages<T>(rng, n, 5, 4);
            for (std::size_t k = 0; k < n; ++k) {
                const T& v = pop.levels[k];
                long long q1 = static_cast<long long>(rng.below(5));      // quarters
                long long q2 = static_cast<long long>(rng.below(5 - q1));
                if (q1 > 0)
                    e1.push_back({v, IndexSet<T>::interval(T(0), ScalarTraits<T>::from_fraction(q1, 4)), w1[k]});
                if (q2 > 0)
                    e2.push_back({v,
                                  IndexSet<T>::interval(ScalarTraits<T>::from_fraction(4 - q2, 4), T(1)),
                                  w2[k]});
            }
            break;
        }
        case AllocationMode::Overpaid: {
            for (std::size_t k = 0; k < n; ++k) {
                const T& v = pop.levels[k];
                T wage = v + ScalarTraits<T>::from_fraction(1 + static_cast<long long>(rng.below(8)), 32);
                e1.push_back({v, IndexSet<T>::full(), wage});
            }
            break;
        }
        case AllocationMode::UnderemployedAtProductivity: {
            for (std::size_t k = 0; k < n; ++k) {
                const T& v = pop.levels[k];
                long long q = 1 + static_cast<long long>(rng.below(3));  // hire q/4 < 1
                e1.push_back({v, IndexSet<T>::interval(T(0), ScalarTraits<T>::from_fraction(q, 4)), v});
            }
            break;
        }
        case AllocationMode::MonopsonyUnderpay: {
            for (std::size_t k = 0; k < n; ++k) {
                const T& v = pop.levels[k];
                e1.push_back({v, IndexSet<T>::full(), v * half});
            }
            break;
        }
        case AllocationMode::DuopsonyUnderpay: {
            const T quarter = ScalarTraits<T>::from_fraction(1, 4);
            for (std::size_t k = 0; k < n; ++k) {
                const T& v = pop.levels[k];
                e1.push_back({v, IndexSet<T>::interval(T(0), half), v * half});
                e2.push_back({v, IndexSet<T>::interval(half, T(1)), v * quarter});
            }
            break;
        }
        case AllocationMode::AsymmetricPoach: {
            for (std::size_t k = 0; k < n; ++k) {
                const T& v = pop.levels[k];
                e1.push_back({v, IndexSet<T>::interval(T(0), half), v});
                e2.push_back({v, IndexSet<T>::interval(half, T(1)), v * half});
            }
            break;
        }
    }
    return Allocation<T>{make_firm_allocation(std::move(e1)), make_firm_allocation(std::move(e2))};
}

enum class ProfileMode {
    CanonicalBertrand = 0,  // both firms offer everyone w(v) = v
    FromAllocation = 1,     // each firm offers exactly what it employs
    RandomMenus = 2,
};

constexpr int kProfileModeCount = 3;

template <class T>
OfferProfile<T> sample_profile(SampleRng& rng, const MarketPopulation<T>& pop,
                               const Allocation<T>& a, ProfileMode mode) {
    switch (mode) {
        case ProfileMode::CanonicalBertrand: return canonical_bertrand_profile(pop);
        case ProfileMode::FromAllocation: return profile_from_allocation(a);
        case ProfileMode::RandomMenus: break;
    }
    OfferProfile<T> p;
    for (int j : {1, 2}) {
        auto wages = detail::monotone_wages<T>(rng, pop.size(), 1, 1);
        std::vector<OfferEntry<T>> es;
        for (std::size_t k = 0; k < pop.size(); ++k) {
            long long q = static_cast<long long>(rng.below(5));
            if (q == 0) continue;
            es.push_back({pop.levels[k],
                          IndexSet<T>::interval(T(0), ScalarTraits<T>::from_fraction(q, 4)), wages[k]});
        }
        p.firm(j) = make_offer_menu(std::move(es));
    }
    return p;
}

}  // namespace monowage
