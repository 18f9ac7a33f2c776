#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "emo/algorithms.hpp"
#include "emo/objectives.hpp"
#include "emo/oracles.hpp"

namespace emo {

/// Invalid experiment configuration. what() lists every violation, one per line.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(std::vector<std::string> violations);
    [[nodiscard]] const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

/// Evaluation budget, either a constant or c * n^k.
struct BudgetSpec {
    double factor = 1e6;
    unsigned exponent = 0;

    /// "10000000", "1e7", "100*n^4", "n^3". Throws std::invalid_argument.
    static BudgetSpec parse(std::string_view text);
    [[nodiscard]] std::uint64_t for_length(std::size_t n) const;
    [[nodiscard]] std::string to_string() const;
};

struct ExperimentConfig {
    ProblemSpec problem;
    /// "gsemo", "nsgaii", "blackbox:nsgaii" or "blackbox:mutation".
    std::string algo = "gsemo";
    std::string mutation = "std";
    std::string crossover = "none";
    double pc = 0.0;
    std::size_t mu = 0;
    /// Offspring per generation of "blackbox:mutation"; 0 means mu.
    std::size_t lambda = 0;
    std::vector<std::size_t> ns;
    BudgetSpec budget;
    std::size_t trials = 1;
    std::uint64_t seed = 1;
    std::string out;
    /// 0 uses the hardware concurrency.
    std::size_t threads = 0;
    /// Wall time is the only nondeterministic column; it is left empty
    /// unless enabled.
    bool wall_time = false;

    /// Throws ConfigError naming every violated constraint.
    void validate() const;
    /// Sets one key of the key=value format. Throws ConfigError.
    void set(std::string_view key, std::string_view value);
    /// Reads key=value lines; blank lines and '#' comments are skipped.
    static ExperimentConfig from_stream(std::istream& in);
    static ExperimentConfig from_file(const std::string& path);
};

/// Seed of trial i at length n: base ^ splitmix64((n << 32) | i).
[[nodiscard]] std::uint64_t trial_seed(std::uint64_t base, std::size_t n, std::size_t trial);

struct TrialRecord {
    std::size_t trial_id = 0;
    std::uint64_t seed = 0;
    std::string problem;
    std::size_t n = 0;
    std::string algo;
    std::string mutation;
    std::string crossover;
    double pc = 0.0;
    std::optional<std::size_t> mu;
    std::uint64_t budget = 0;
    std::uint64_t evaluations_used = 0;
    std::uint64_t generations = 0;
    std::optional<std::uint64_t> first_pareto_hit_evals;
    double coverage_fraction = 0.0;
    bool success = false;
    std::optional<double> wall_time_ms;

    bool operator==(const TrialRecord&) const = default;
};

inline constexpr std::string_view kCsvSchema = "emo-trials/1";

/// Schema line, header, one line per record.
void write_csv(std::ostream& out, const std::vector<TrialRecord>& records);
[[nodiscard]] std::string format_csv(const std::vector<TrialRecord>& records);
/// Throws std::runtime_error on a schema or field mismatch.
[[nodiscard]] std::vector<TrialRecord> parse_csv(std::istream& in);
[[nodiscard]] std::vector<TrialRecord> read_csv_file(const std::string& path);

/// Builds hooks for one trial; called from worker threads. The problem
/// reference stays valid for the whole trial.
using HookFactory = std::function<RunHooks(const Problem&, std::size_t n, std::size_t trial)>;

/// One trial of `config` at length n.
[[nodiscard]] TrialRecord run_trial(const ExperimentConfig& config, std::size_t n, std::size_t trial,
                                    const HookFactory& hooks = {});

/// trials x ns records sorted by (n position in the list, trial_id).
/// Validates first. Writes the CSV when config.out is set.
[[nodiscard]] std::vector<TrialRecord> run_experiment(const ExperimentConfig& config,
                                                      const HookFactory& hooks = {});

struct SummaryRow {
    std::string problem;
    std::string algo;
    std::string mutation;
    std::string crossover;
    double pc = 0.0;
    std::optional<std::size_t> mu;
    std::uint64_t budget = 0;
    std::size_t n = 0;
    std::size_t trials = 0;
    std::size_t successes = 0;
    double success_rate = 0.0;
    /// Over successful trials only; absent without successes.
    std::optional<double> median_evaluations;
    std::optional<double> mean_evaluations;
    std::optional<std::uint64_t> max_evaluations;
    std::size_t exhausted = 0;
};

struct SlopeFit {
    /// Group label without n.
    std::string label;
    std::size_t points = 0;
    double slope = 0.0;
    double intercept = 0.0;
};

struct Summary {
    std::vector<SummaryRow> rows;
    /// One fit per group with medians at three or more lengths.
    std::vector<SlopeFit> slopes;
};

/// Throws std::invalid_argument on empty input.
[[nodiscard]] Summary summarize(const std::vector<TrialRecord>& records);
[[nodiscard]] std::string format_summary(const Summary& summary);

/// Least squares slope of log(y) against log(x).
[[nodiscard]] SlopeFit log_log_fit(const std::vector<double>& x, const std::vector<double>& y);

// ---------------------------------------------------------------------------

struct ClaimInfo {
    std::string id;
    std::string description;
    std::function<std::vector<OracleReport>()> check;
};

/// Desk-sized oracle checks runnable by `emo verify`.
[[nodiscard]] const std::vector<ClaimInfo>& claim_registry();

} // namespace emo
