// Command line front end: run experiments, verify oracle claims, summarise CSVs.

#include <exception>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "emo/harness.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kFailure = 2;

int run_command(const std::string& config_path, const std::map<std::string, std::string>& flags)
{
    emo::ExperimentConfig config;
    if (!config_path.empty()) {
        config = emo::ExperimentConfig::from_file(config_path);
    }
    std::vector<std::string> errors;
    for (const auto& [key, value] : flags) {
        try {
            config.set(key, value);
        } catch (const emo::ConfigError& e) {
            errors.insert(errors.end(), e.violations().begin(), e.violations().end());
        }
    }
    if (!errors.empty()) {
        throw emo::ConfigError(errors);
    }
    const auto records = emo::run_experiment(config);
    if (config.out.empty()) {
        emo::write_csv(std::cout, records);
    } else {
        std::cerr << records.size() << " records written to " << config.out << '\n';
    }
    return kOk;
}

int verify_command(const std::string& id)
{
    bool found = false;
    bool all_pass = true;
    for (const auto& claim : emo::claim_registry()) {
        if (id != "all" && id != claim.id) {
            continue;
        }
        found = true;
        std::cout << "== " << claim.id << ": " << claim.description << '\n';
        for (const auto& report : claim.check()) {
            std::cout << "  " << report.summary() << '\n';
            all_pass = all_pass && report.pass;
        }
    }
    if (!found) {
        std::cerr << "unknown claim '" << id << "'; known claims:\n";
        for (const auto& claim : emo::claim_registry()) {
            std::cerr << "  " << claim.id << '\n';
        }
        return kInvalid;
    }
    return all_pass ? kOk : kFailure;
}

int summarize_command(const std::string& path)
{
    const auto records = emo::read_csv_file(path);
    std::cout << emo::format_summary(emo::summarize(records));
    return kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Royal-road multi-objective benchmarks"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run an experiment grid and emit a CSV");
    std::string config_path;
    run->add_option("--config", config_path, "key=value file; flags override its values");
    // every flag maps onto a config key of the same name
    const std::vector<std::pair<std::string, std::string>> keys{
        {"problem", "rrrmo | urrrmo | urrrmo-sigma-z"},
        {"sigma", "identity | hypermut-hard | random | 1-based mapping"},
        {"z", "zero | random | bit literal"},
        {"n", "comma-separated lengths"},
        {"algo", "gsemo | nsgaii | blackbox:nsgaii | blackbox:mutation"},
        {"mutation", "std | unbiased:<preset> | hyper:<r>"},
        {"crossover", "none | onepoint | uniform"},
        {"pc", "crossover probability"},
        {"mu", "population size"},
        {"lambda", "offspring per generation (blackbox:mutation)"},
        {"budget", "evaluations, e.g. 1e7 or 100*n^4"},
        {"trials", "trials per length"},
        {"seed", "base seed"},
        {"out", "output CSV path (stdout if omitted)"},
        {"threads", "worker threads, 0 = all cores"},
        {"wall_time", "record wall time (breaks byte-identical output)"},
    };
    std::map<std::string, std::string> values;
    for (const auto& [key, help] : keys) {
        run->add_option("--" + key, values[key], help);
    }

    auto* verify = app.add_subcommand("verify", "run an oracle check");
    std::string claim_id;
    verify->add_option("claim", claim_id, "claim id or 'all'")->required();

    auto* summarize = app.add_subcommand("summarize", "aggregate a results CSV");
    std::string csv_path;
    summarize->add_option("file", csv_path, "CSV written by 'run'")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInvalid;
    }

    try {
        if (*run) {
            std::map<std::string, std::string> given;
            for (const auto& [key, help] : keys) {
                if (run->count("--" + key) > 0) {
                    given[key] = values[key];
                }
            }
            return run_command(config_path, given);
        }
        if (*verify) {
            return verify_command(claim_id);
        }
        return summarize_command(csv_path);
    } catch (const emo::ConfigError& e) {
        std::cerr << e.what() << '\n';
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailure;
    }
}
