#pragma once
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "monowage/blocking.hpp"
#include "monowage/equilibrium.hpp"
#include "monowage/sampler.hpp"
#include "monowage/scenario.hpp"

namespace monowage {

// Batch driver configuration. Parsed from JSON with unknown-key rejection and
// a version header, mirroring the scenario format.
struct ExperimentConfig {
    std::uint64_t seed = 0;
    int trials = 0;
    int n_min = 2;
    int n_max = 16;
    MassKind masses = MassKind::Uniform;
    double tol = 1e-9;
    double eta = 1e-9;
    std::string output;  // CSV row destination; empty = stdout only summary
    int threads = 0;     // 0 = hardware concurrency
};

inline ExperimentConfig parse_experiment_config(const std::string& text) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ScenarioError(std::string("config: invalid JSON: ") + e.what());
    }
    detail::require_keys(doc,
                         {"version", "seed", "trials", "levels", "masses", "tol", "eta", "output",
                          "threads"},
                         "config");
    if (!doc.contains("version") || !doc["version"].is_number_integer() ||
        doc["version"].get<int>() != 1)
        throw ScenarioError("config: missing or unsupported version (expected 1)");
    ExperimentConfig cfg;
    if (doc.contains("seed")) cfg.seed = doc["seed"].get<std::uint64_t>();
    if (!doc.contains("trials")) throw ScenarioError("config: missing trials");
    cfg.trials = doc["trials"].get<int>();
    if (cfg.trials <= 0) throw ScenarioError("config: trials must be positive");
    if (doc.contains("levels")) {
        detail::require_keys(doc["levels"], {"min", "max"}, "config.levels");
        cfg.n_min = doc["levels"].value("min", 2);
        cfg.n_max = doc["levels"].value("max", 16);
        if (cfg.n_min < 1 || cfg.n_max < cfg.n_min)
            throw ScenarioError("config: bad level range");
    }
    if (doc.contains("masses")) {
        std::string m = doc["masses"].get<std::string>();
        if (m == "uniform")
            cfg.masses = MassKind::Uniform;
        else if (m == "random-positive")
            cfg.masses = MassKind::RandomPositive;
        else
            throw ScenarioError("config: masses must be 'uniform' or 'random-positive'");
    }
    if (doc.contains("tol")) cfg.tol = doc["tol"].get<double>();
    if (doc.contains("eta")) cfg.eta = doc["eta"].get<double>();
    if (!(cfg.tol > 0) || !(cfg.eta > 0)) throw ScenarioError("config: tolerances must be positive");
    if (doc.contains("output")) cfg.output = doc["output"].get<std::string>();
    if (doc.contains("threads")) cfg.threads = doc["threads"].get<int>();
    return cfg;
}

struct TrialRow {
    int trial = 0;
    int n = 0;
    double total_mass = 0;
    bool bertrand = false;
    std::string cases;  // classification labels, ';'-separated
    bool block_found = false;
    std::string block_case;
    int blocker = 0;
    double gain = 0;
    bool mismatch = false;  // block existence disagrees with the Bertrand test
    bool equilibrium = false;
    double br_gain1 = 0, br_gain2 = 0;
    double profit1 = 0, profit2 = 0;
    std::string error;
};

struct ExperimentSummary {
    int trials = 0;
    int bertrand_count = 0;
    int blocks_found = 0;
    int mismatches = 0;
    int equilibria = 0;
    int errors = 0;
    double max_equilibrium_profit_violation = 0;  // distance outside [-tol, eta*mass]
    std::map<std::string, int> case_counts;
};

inline TrialRow run_trial(const ExperimentConfig& cfg, int trial) {
    TrialRow row;
    row.trial = trial;
    SampleRng rng(trial_seed(cfg.seed, static_cast<std::uint64_t>(trial)));
    int n = cfg.n_min + static_cast<int>(rng.below(static_cast<std::uint64_t>(cfg.n_max - cfg.n_min + 1)));
    row.n = n;
    auto pop = sample_population<double>(rng, n, cfg.masses);
    row.total_mass = pop.total_mass;
    auto mode = static_cast<AllocationMode>(trial % kAllocationModeCount);
    auto alloc = sample_allocation<double>(rng, pop, mode);

    Tol<double> tol = Tol<double>::standard();
    tol.eta = cfg.eta;
    row.bertrand = is_bertrand(alloc, pop, cfg.tol).ok;
    {
        std::string cs;
        for (const auto& f : classify_non_bertrand(alloc, pop, cfg.tol)) {
            if (!cs.empty()) cs += ';';
            cs += case_label_name(f.label);
        }
        row.cases = cs;
    }
    try {
        auto block = find_block(alloc, pop, cfg.tol, tol);
        row.block_found = block.has_value();
        if (block) {
            row.block_case = case_label_name(block->case_label);
            row.blocker = block->blocker;
            row.gain = verify_block(alloc, *block, pop, tol).gain();
        }
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    row.mismatch = !row.error.empty() || (row.block_found == row.bertrand);

    auto pmode = static_cast<ProfileMode>(trial % kProfileModeCount);
    auto profile = sample_profile<double>(rng, pop, alloc, pmode);
    BestResponseParams<double> params;
    params.eta = cfg.eta;
    params.tol = tol;
    auto eq = verify_equilibrium(profile, pop, params, cfg.eta * pop.total_mass);
    row.equilibrium = eq.is_equilibrium;
    row.br_gain1 = eq.firm1.gain;
    row.br_gain2 = eq.firm2.gain;
    row.profit1 = eq.firm1.current_profit;
    row.profit2 = eq.firm2.current_profit;
    return row;
}

inline std::string row_header() {
    return "trial,n,total_mass,bertrand,cases,block_found,block_case,blocker,gain,mismatch,"
           "equilibrium,br_gain1,br_gain2,profit1,profit2,error";
}

inline std::string format_full(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string row_to_csv(const TrialRow& r) {
    std::ostringstream os;
    os << r.trial << ',' << r.n << ',' << format_full(r.total_mass) << ','
       << (r.bertrand ? 1 : 0) << ',' << r.cases << ','
       << (r.block_found ? 1 : 0) << ',' << r.block_case << ',' << r.blocker << ','
       << format_full(r.gain) << ',' << (r.mismatch ? 1 : 0) << ',' << (r.equilibrium ? 1 : 0)
       << ',' << format_full(r.br_gain1) << ',' << format_full(r.br_gain2) << ','
       << format_full(r.profit1) << ',' << format_full(r.profit2) << ',' << r.error;
    return os.str();
}

// Trials run concurrently (each depends only on its id), rows come back
// ordered by trial id.
inline std::pair<std::vector<TrialRow>, ExperimentSummary> run_experiment(const ExperimentConfig& cfg) {
    std::vector<TrialRow> rows(static_cast<std::size_t>(cfg.trials));
    unsigned workers = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                       : std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w]() {
            for (int t = static_cast<int>(w); t < cfg.trials; t += static_cast<int>(workers))
                rows[static_cast<std::size_t>(t)] = run_trial(cfg, t);
        });
    for (auto& th : pool) th.join();

    ExperimentSummary sum;
    sum.trials = cfg.trials;
    for (const auto& r : rows) {
        sum.bertrand_count += r.bertrand;
        sum.blocks_found += r.block_found;
        sum.mismatches += r.mismatch;
        sum.equilibria += r.equilibrium;
        sum.errors += !r.error.empty();
        if (!r.block_case.empty()) sum.case_counts[r.block_case]++;
        if (r.equilibrium) {
            for (double p : {r.profit1, r.profit2}) {
                double lo = -cfg.tol, hi = cfg.eta * r.total_mass;
                double viol = p < lo ? lo - p : (p > hi ? p - hi : 0.0);
                if (viol > sum.max_equilibrium_profit_violation)
                    sum.max_equilibrium_profit_violation = viol;
            }
        }
    }
    return {std::move(rows), sum};
}

inline void write_rows(const std::vector<TrialRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ScenarioError("experiment: cannot write " + path);
    out << row_header() << '\n';
    for (const auto& r : rows) out << row_to_csv(r) << '\n';
}

}  // namespace monowage
