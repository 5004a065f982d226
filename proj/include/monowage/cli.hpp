#pragma once
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "monowage/experiment.hpp"
#include "monowage/oracle.hpp"
#include "monowage/scenario.hpp"

namespace monowage {

// Exit codes: 0 ok, 1 property falsified, 2 input error.
constexpr int kExitOk = 0;
constexpr int kExitFalsified = 1;
constexpr int kExitInputError = 2;

namespace cli_detail {

using nlohmann::json;

inline json proposal_to_json(const BlockProposal<double>& p, const BlockVerdict<double>& verdict) {
    json out;
    out["blocker"] = p.blocker;
    out["case"] = case_label_name(p.case_label);
    out["profit_before"] = verdict.profit_before;
    out["profit_after"] = verdict.profit_after;
    out["gain"] = verdict.gain();
    json params = json::object();
    for (const auto& [k, v] : p.parameters) params[k] = v;
    out["parameters"] = std::move(params);
    json alt = json::array();
    for (const auto& e : p.alternative.entries)
        alt.push_back({{"level", e.level},
                       {"wage", e.wage},
                       {"intervals", detail::intervals_to_json(e.hired)}});
    out["alternative"] = std::move(alt);
    json conds = json::array();
    for (const auto& c : verdict.per_level)
        conds.push_back({{"level", c.level}, {"condition", c.condition}});
    out["conditions"] = std::move(conds);
    return out;
}

inline void print_diagnostics(const std::vector<Diagnostic>& diags) {
    for (const auto& d : diags)
        std::cerr << "invalid (" << diagnostic_kind_name(d.kind) << ") firm=" << d.firm
                  << " level=" << d.level << ": " << d.detail << "\n";
}

inline int cmd_validate(const std::string& path) {
    Scenario sc = load_scenario(path);
    std::vector<Diagnostic> diags;
    if (sc.allocation) {
        auto d = validate_allocation(*sc.allocation, sc.population);
        diags.insert(diags.end(), d.begin(), d.end());
    }
    if (sc.profile) {
        auto d = validate_profile(*sc.profile, sc.population);
        diags.insert(diags.end(), d.begin(), d.end());
    }
    if (!diags.empty()) {
        print_diagnostics(diags);
        return kExitFalsified;
    }
    std::cout << "ok: scenario valid (" << sc.population.size() << " levels"
              << (sc.allocation ? ", allocation" : "") << (sc.profile ? ", profile" : "") << ")\n";
    return kExitOk;
}

inline int cmd_find_block(const std::string& path, double tol, double eta, bool use_json,
                          bool use_oracle, const std::string& case_filter, bool inject_mismatch) {
    Scenario sc = load_scenario(path);
    if (!sc.allocation) {
        std::cerr << "find-block: scenario has no allocation\n";
        return kExitInputError;
    }
    const auto& pop = sc.population;
    const auto& alloc = *sc.allocation;
    Tol<double> tolerances = Tol<double>::standard();
    tolerances.eta = eta;

    bool bertrand = is_bertrand(alloc, pop, tol).ok;
    std::optional<BlockProposal<double>> block;
    std::string error;
    try {
        if (case_filter.empty()) {
            block = find_block(alloc, pop, tol, tolerances);
        } else {
            for (const auto& flag : classify_non_bertrand(alloc, pop, tol)) {
                if (case_label_name(flag.label) != case_filter) continue;
                block = construct_block(alloc, flag, pop, tolerances);
                break;
            }
        }
    } catch (const BlockConstructionError& e) {
        error = e.what();
    }

    bool found = block.has_value();
    bool mismatch = inject_mismatch || !error.empty() || (found == bertrand);

    json out;
    out["bertrand"] = bertrand;
    out["block_found"] = found;
    if (!error.empty()) out["error"] = error;
    if (block) out["block"] = proposal_to_json(*block, verify_block(alloc, *block, pop, tolerances));

    bool oracle_ran = false, oracle_agrees = true;
    if (use_oracle) {
        auto lat = SearchLattice<double>::standard(alloc, pop, eta);
        try {
            auto ob = oracle_find_block(alloc, pop, lat, tolerances);
            oracle_ran = true;
            oracle_agrees = ob.has_value() == found;
            out["oracle_block_found"] = ob.has_value();
            if (!oracle_agrees) mismatch = true;
        } catch (const OracleCapExceeded&) {
            std::cerr << "warning: oracle cap exceeded; constructive result only\n";
        }
        out["oracle_checked"] = oracle_ran;
    }

    if (use_json) {
        std::cout << out.dump(2) << "\n";
    } else if (found) {
        auto verdict = verify_block(alloc, *block, pop, tolerances);
        std::cout << "block found: case=" << case_label_name(block->case_label)
                  << " blocker=firm" << block->blocker << " gain=" << verdict.gain() << "\n";
        for (const auto& [k, v] : block->parameters) std::cout << "  " << k << " = " << v << "\n";
    } else {
        std::cout << "no block; allocation is Bertrand\n";
    }
    if (!error.empty()) std::cerr << "error: " << error << "\n";
    return mismatch ? kExitFalsified : kExitOk;
}

inline int cmd_verify_eq(const std::string& path, double tol, double eta, bool use_json) {
    Scenario sc = load_scenario(path);
    if (!sc.profile) {
        std::cerr << "verify-eq: scenario has no profile\n";
        return kExitInputError;
    }
    BestResponseParams<double> params;
    params.eta = eta;
    auto report = verify_equilibrium(*sc.profile, sc.population, params,
                                     eta * sc.population.total_mass);
    (void)tol;
    if (use_json) {
        json out;
        out["is_equilibrium"] = report.is_equilibrium;
        out["tolerance"] = report.tolerance;
        for (int j : {1, 2}) {
            const auto& fr = report.firm(j);
            out[j == 1 ? "firm1" : "firm2"] = {{"current_profit", fr.current_profit},
                                               {"best_profit", fr.best_profit},
                                               {"gain", fr.gain}};
        }
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << (report.is_equilibrium ? "equilibrium" : "not an equilibrium")
                  << " (gain1=" << report.firm1.gain << ", gain2=" << report.firm2.gain
                  << ", tol=" << report.tolerance << ")\n";
    }
    return kExitOk;
}

inline int cmd_best_response(const std::string& path, int firm, double eta, bool use_json) {
    Scenario sc = load_scenario(path);
    if (!sc.profile) {
        std::cerr << "best-response: scenario has no profile\n";
        return kExitInputError;
    }
    if (firm != 1 && firm != 2) {
        std::cerr << "best-response: --firm must be 1 or 2\n";
        return kExitInputError;
    }
    BestResponseParams<double> params;
    params.eta = eta;
    auto [menu, profit] = best_response(sc.profile->firm(firm == 1 ? 2 : 1), sc.population, params);
    if (use_json) {
        json out;
        out["firm"] = firm;
        out["profit"] = profit;
        json arr = json::array();
        for (const auto& e : menu.entries)
            arr.push_back({{"level", e.level},
                           {"wage", e.wage},
                           {"intervals", detail::intervals_to_json(e.offered)}});
        out["menu"] = std::move(arr);
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "best response for firm " << firm << ": profit " << profit << ", "
                  << menu.entries.size() << " offered levels\n";
        for (const auto& e : menu.entries)
            std::cout << "  level " << e.level << " wage " << e.wage << " measure "
                      << e.offered.measure() << "\n";
    }
    return kExitOk;
}

inline int cmd_oracle(const std::string& path, double tol, double eta, bool use_json) {
    Scenario sc = load_scenario(path);
    if (!sc.allocation) {
        std::cerr << "oracle: scenario has no allocation\n";
        return kExitInputError;
    }
    const auto& pop = sc.population;
    const auto& alloc = *sc.allocation;
    Tol<double> tolerances = Tol<double>::standard();
    tolerances.eta = eta;
    auto lat = SearchLattice<double>::standard(alloc, pop, eta);
    std::optional<BlockProposal<double>> block;
    try {
        block = oracle_find_block(alloc, pop, lat, tolerances);
    } catch (const OracleCapExceeded& e) {
        std::cerr << "oracle: " << e.what() << "\n";
        return kExitInputError;
    }
    bool bertrand = is_bertrand(alloc, pop, tol).ok;
    bool mismatch = block.has_value() == bertrand;
    if (use_json) {
        json out;
        out["bertrand"] = bertrand;
        out["core"] = !block.has_value();
        if (block) out["block"] = proposal_to_json(*block, verify_block(alloc, *block, pop, tolerances));
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << (block ? "oracle: block found; not a core allocation"
                            : "oracle: core allocation")
                  << "\n";
    }
    return mismatch ? kExitFalsified : kExitOk;
}

inline int cmd_experiment(const std::string& config_path, std::optional<std::uint64_t> seed_override,
                          bool use_json) {
    std::ifstream in(config_path);
    if (!in) {
        std::cerr << "experiment: cannot open " << config_path << "\n";
        return kExitInputError;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    ExperimentConfig cfg = parse_experiment_config(ss.str());
    if (seed_override) cfg.seed = *seed_override;
    auto [rows, summary] = run_experiment(cfg);
    if (!cfg.output.empty()) write_rows(rows, cfg.output);
    if (use_json) {
        json out;
        out["trials"] = summary.trials;
        out["bertrand"] = summary.bertrand_count;
        out["blocks_found"] = summary.blocks_found;
        out["mismatches"] = summary.mismatches;
        out["equilibria"] = summary.equilibria;
        out["errors"] = summary.errors;
        out["max_equilibrium_profit_violation"] = summary.max_equilibrium_profit_violation;
        json cases = json::object();
        for (const auto& [k, v] : summary.case_counts) cases[k] = v;
        out["case_counts"] = std::move(cases);
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "trials " << summary.trials << ", bertrand " << summary.bertrand_count
                  << ", blocks " << summary.blocks_found << ", mismatches " << summary.mismatches
                  << ", equilibria " << summary.equilibria << ", errors " << summary.errors << "\n";
        for (const auto& [k, v] : summary.case_counts)
            std::cout << "  case " << k << ": " << v << "\n";
        if (!cfg.output.empty()) std::cout << "rows written to " << cfg.output << "\n";
    }
    return summary.mismatches > 0 ? kExitFalsified : kExitOk;
}

}  // namespace cli_detail

inline int cli_main(std::vector<std::string> args) {
    CLI::App app{"Bertrand competition over monotone wage menus: verification toolkit"};
    app.require_subcommand(1);

    std::string scenario_path, config_path, case_filter;
    double tol = 1e-9, eta = 1e-9;
    bool use_json = false, use_oracle = false, inject_mismatch = false;
    int firm = 1;
    std::uint64_t seed = 0;
    bool seed_set = false;

    auto* validate = app.add_subcommand("validate", "check a scenario file");
    validate->add_option("scenario", scenario_path)->required();

    auto* find = app.add_subcommand("find-block", "classify and construct a blocking allocation");
    find->add_option("scenario", scenario_path)->required();
    find->add_option("--tol", tol, "classification tolerance");
    find->add_option("--eta", eta, "outbid increment");
    find->add_flag("--json", use_json, "machine-readable output");
    find->add_flag("--oracle", use_oracle, "cross-check with exhaustive search");
    find->add_option("--case", case_filter, "construct only the named case");
    find->add_flag("--inject-mismatch", inject_mismatch)->group("");  // test hook

    auto* verify = app.add_subcommand("verify-eq", "Nash check for an offer profile");
    verify->add_option("scenario", scenario_path)->required();
    verify->add_option("--tol", tol);
    verify->add_option("--eta", eta);
    verify->add_flag("--json", use_json);

    auto* br = app.add_subcommand("best-response", "monotone best response for one firm");
    br->add_option("scenario", scenario_path)->required();
    br->add_option("--firm", firm, "responding firm (rival's menu is taken from the profile)");
    br->add_option("--eta", eta);
    br->add_flag("--json", use_json);

    auto* oracle = app.add_subcommand("oracle", "exhaustive core membership check");
    oracle->add_option("scenario", scenario_path)->required();
    oracle->add_option("--tol", tol);
    oracle->add_option("--eta", eta);
    oracle->add_flag("--json", use_json);

    auto* exp = app.add_subcommand("experiment", "seeded random batch with CSV rows");
    exp->add_option("config", config_path)->required();
    exp->add_option("--seed", seed)->each([&](const std::string&) { seed_set = true; });
    exp->add_flag("--json", use_json);

    std::vector<const char*> argv;
    argv.push_back("monowage");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (app.got_subcommand(validate)) return cli_detail::cmd_validate(scenario_path);
        if (app.got_subcommand(find))
            return cli_detail::cmd_find_block(scenario_path, tol, eta, use_json, use_oracle,
                                              case_filter, inject_mismatch);
        if (app.got_subcommand(verify)) return cli_detail::cmd_verify_eq(scenario_path, tol, eta, use_json);
        if (app.got_subcommand(br)) return cli_detail::cmd_best_response(scenario_path, firm, eta, use_json);
        if (app.got_subcommand(oracle)) return cli_detail::cmd_oracle(scenario_path, tol, eta, use_json);
        if (app.got_subcommand(exp))
            return cli_detail::cmd_experiment(config_path,
                                              seed_set ? std::optional<std::uint64_t>(seed)
                                                       : std::nullopt,
                                              use_json);
    } catch (const ScenarioError& e) {
        std::cerr << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}

}  // namespace monowage
