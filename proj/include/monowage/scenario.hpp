#pragma once
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "monowage/allocation.hpp"
#include "monowage/market.hpp"
#include "monowage/menu.hpp"

namespace monowage {

class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// On-disk scenario: a population, optionally an allocation, optionally an
// offer profile. JSON with a version header; unknown keys are rejected.
struct Scenario {
    MarketPopulation<double> population;
    std::optional<Allocation<double>> allocation;
    std::optional<OfferProfile<double>> profile;
};

namespace detail {

using json = nlohmann::json;

inline void require_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
    if (!obj.is_object()) throw ScenarioError(where + ": expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) known = true;
        if (!known) throw ScenarioError(where + ": unknown key '" + it.key() + "'");
    }
}

inline double number_at(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) throw ScenarioError(where + ": missing key '" + key + "'");
    if (!obj[key].is_number()) throw ScenarioError(where + ": '" + key + "' must be a number");
    return obj[key].get<double>();
}

inline IndexSet<double> parse_intervals(const json& arr, const std::string& where) {
    if (!arr.is_array()) throw ScenarioError(where + ": 'intervals' must be an array");
    std::vector<Interval<double>> parts;
    for (const auto& pair : arr) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
            throw ScenarioError(where + ": each interval must be [lo, hi]");
        double lo = pair[0].get<double>();
        double hi = pair[1].get<double>();
        if (lo < 0.0 || hi > 1.0 || lo > hi)
            throw ScenarioError(where + ": interval out of range");
        parts.push_back({lo, hi});
    }
    try {
        return IndexSet<double>(std::move(parts));
    } catch (const std::invalid_argument& e) {
        throw ScenarioError(where + ": " + e.what());
    }
}

template <class Entry>
std::vector<Entry> parse_entries(const json& arr, const std::string& where) {
    if (!arr.is_array()) throw ScenarioError(where + ": expected an array of level entries");
    std::vector<Entry> out;
    for (const auto& e : arr) {
        require_keys(e, {"level", "wage", "intervals"}, where);
        double level = number_at(e, "level", where);
        double wage = number_at(e, "wage", where);
        if (!e.contains("intervals")) throw ScenarioError(where + ": missing key 'intervals'");
        out.push_back({level, parse_intervals(e["intervals"], where), wage});
    }
    return out;
}

inline json intervals_to_json(const IndexSet<double>& s) {
    json arr = json::array();
    for (const auto& p : s.parts()) arr.push_back(json::array({p.lo, p.hi}));
    return arr;
}

}  // namespace detail

inline Scenario parse_scenario_text(const std::string& text) {
    using detail::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ScenarioError(std::string("scenario: invalid JSON: ") + e.what());
    }
    detail::require_keys(doc, {"version", "population", "allocation", "profile"}, "scenario");
    if (!doc.contains("version") || !doc["version"].is_number_integer() ||
        doc["version"].get<int>() != 1)
        throw ScenarioError("scenario: missing or unsupported version (expected 1)");
    if (!doc.contains("population")) throw ScenarioError("scenario: missing population");

    const json& p = doc["population"];
    detail::require_keys(p, {"levels", "masses"}, "population");
    if (!p.contains("levels") || !p.contains("masses") || !p["levels"].is_array() ||
        !p["masses"].is_array())
        throw ScenarioError("population: needs 'levels' and 'masses' arrays");
    std::vector<double> levels, masses;
    for (const auto& x : p["levels"]) {
        if (!x.is_number()) throw ScenarioError("population: levels must be numbers");
        levels.push_back(x.get<double>());
    }
    for (const auto& x : p["masses"]) {
        if (!x.is_number()) throw ScenarioError("population: masses must be numbers");
        masses.push_back(x.get<double>());
    }

    Scenario sc;
    try {
        sc.population = make_population(std::move(levels), std::move(masses));
    } catch (const std::invalid_argument& e) {
        throw ScenarioError(std::string("population: ") + e.what());
    }

    if (doc.contains("allocation")) {
        const json& a = doc["allocation"];
        detail::require_keys(a, {"firm1", "firm2"}, "allocation");
        Allocation<double> alloc;
        for (int j : {1, 2}) {
            const char* key = j == 1 ? "firm1" : "firm2";
            if (!a.contains(key)) throw ScenarioError(std::string("allocation: missing ") + key);
            alloc.firm(j) = make_firm_allocation(
                detail::parse_entries<AllocationEntry<double>>(a[key], std::string("allocation.") + key));
        }
        sc.allocation = std::move(alloc);
    }
    if (doc.contains("profile")) {
        const json& pr = doc["profile"];
        detail::require_keys(pr, {"firm1", "firm2"}, "profile");
        OfferProfile<double> profile;
        for (int j : {1, 2}) {
            const char* key = j == 1 ? "firm1" : "firm2";
            if (!pr.contains(key)) throw ScenarioError(std::string("profile: missing ") + key);
            profile.firm(j) = make_offer_menu(
                detail::parse_entries<OfferEntry<double>>(pr[key], std::string("profile.") + key));
        }
        sc.profile = std::move(profile);
    }
    return sc;
}

inline std::string scenario_to_text(const Scenario& sc) {
    using detail::json;
    json doc;
    doc["version"] = 1;
    doc["population"] = {{"levels", sc.population.levels}, {"masses", sc.population.masses}};
    if (sc.allocation) {
        json a;
        for (int j : {1, 2}) {
            json arr = json::array();
            for (const auto& e : sc.allocation->firm(j).entries)
                arr.push_back({{"level", e.level},
                               {"wage", e.wage},
                               {"intervals", detail::intervals_to_json(e.hired)}});
            a[j == 1 ? "firm1" : "firm2"] = std::move(arr);
        }
        doc["allocation"] = std::move(a);
    }
    if (sc.profile) {
        json pr;
        for (int j : {1, 2}) {
            json arr = json::array();
            for (const auto& e : sc.profile->firm(j).entries)
                arr.push_back({{"level", e.level},
                               {"wage", e.wage},
                               {"intervals", detail::intervals_to_json(e.offered)}});
            pr[j == 1 ? "firm1" : "firm2"] = std::move(arr);
        }
        doc["profile"] = std::move(pr);
    }
    return doc.dump(2) + "\n";
}

inline Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("scenario: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario_text(ss.str());
}

inline void save_scenario(const Scenario& sc, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ScenarioError("scenario: cannot write " + path);
    out << scenario_to_text(sc);
}

}  // namespace monowage
