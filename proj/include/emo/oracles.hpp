#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "emo/algorithms.hpp"
#include "emo/bitstring.hpp"
#include "emo/objectives.hpp"
#include "emo/rng.hpp"

namespace emo {

/// Result of one oracle check.
struct OracleReport {
    std::string claim;
    bool pass = false;
    /// Set when the input violated the check's precondition.
    bool precondition_failed = false;
    std::string observed;
    double tolerance = 0.0;
    std::uint64_t samples = 0;
    std::optional<std::string> counterexample;

    [[nodiscard]] std::string summary() const;
};

// ---------------------------------------------------------------------------
// Exhaustive Pareto set

inline constexpr std::size_t kMaxBruteForceBits = 24;

struct ParetoSet {
    /// Sorted ascending.
    std::vector<Fitness> fitness_vectors;
    /// Sorted by text rendering.
    std::vector<BitString> preimages;
};

/// Evaluates all 2^n strings and keeps the non-dominated ones. Throws
/// SizeLimitError for n > kMaxBruteForceBits.
[[nodiscard]] ParetoSet brute_force_pareto(const Problem& problem);

// ---------------------------------------------------------------------------
// Invariant checks

/// Size bound for a mutually non-dominated set: n-k+1 for RRRMO members
/// with k >= 1 ones, n for uRRRMO members of positive fitness, 1 when the
/// set contains a zero-fitness point. Fails with precondition_failed when
/// the input is not an antichain with distinct fitness vectors.
[[nodiscard]] OracleReport antichain_bound_check(std::span<const Individual> set, const Problem& problem);

/// (i) at most 4m members of the first layer have positive crowding
/// distance, m the number of distinct fitness vectors in that layer;
/// (ii) if mu >= 4m, the survivors cover every first-layer fitness vector.
/// Pass an empty `survivors` span to check (i) only.
[[nodiscard]] OracleReport protect_layer_check(std::span<const Individual> merged, const Layering& layering,
                                               std::span<const std::size_t> survivors, std::size_t mu);

/// Membership tests on half strings of length n/2.
struct SubsetPredicates {
    std::function<bool(const BitString&)> in_u;
    std::function<bool(const BitString&)> in_p;
    std::function<bool(const BitString&)> in_c;
    std::function<bool(const BitString&)> in_t;
};

/// Straightforward per-bit implementations, independent of the objectives module.
[[nodiscard]] SubsetPredicates reference_subset_predicates(std::size_t n);

inline constexpr std::uint64_t kMaxEnumeratedPairs = 10'000'000;

/// Checks H(U,P) within [n/8, 3n/8] and H(C,T) within [3n/16, 5n/16].
/// Sets are enumerated when n/2 <= 16 and both pair products stay within
/// kMaxEnumeratedPairs; otherwise `sample_size` random pairs of each kind
/// are drawn.
[[nodiscard]] OracleReport hamming_bounds_check(std::size_t n, std::uint64_t sample_size, std::uint64_t seed,
                                                const SubsetPredicates& predicates);
[[nodiscard]] OracleReport hamming_bounds_check(std::size_t n, std::uint64_t sample_size, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Monte Carlo checks of operators

using UnaryOperator = std::function<BitString(const BitString&, Rng&)>;

struct FlipFrequencyReport {
    OracleReport report;
    std::vector<double> rates;
    double expected_rate = 0.0;
    /// 3 sigma half-width of the binomial band.
    double band = 0.0;
    /// Largest |rate - expected| / sigma over all positions.
    double max_abs_z = 0.0;
};

/// Per-position empirical flip rates of `op` applied to x. Pass iff every
/// position lies within 3 sigma of `expected_rate`. Needs samples >= 1e4.
[[nodiscard]] FlipFrequencyReport operator_flip_frequency(const UnaryOperator& op, const BitString& x,
                                                          double expected_rate, std::uint64_t samples,
                                                          std::uint64_t seed);

/// Two-sample chi-square homogeneity test of op(sigma(x) xor z) against
/// sigma(op(x)) xor z over all 2^n outcomes; pass iff p >= alpha.
[[nodiscard]] OracleReport unbiasedness_chi_square(const UnaryOperator& op, const BitString& x,
                                                   const Permutation& sigma, const BitString& z,
                                                   std::uint64_t samples, double alpha, std::uint64_t seed);

using Predicate = std::function<bool(const BitString&)>;

struct ProbeReport {
    OracleReport report;
    std::uint64_t hits = 0;
    double rate = 0.0;
    /// One-sided 95% Clopper-Pearson upper bound on the hit probability.
    double upper_bound = 0.0;
};

/// Draws sources uniformly from {x : source(x)} by rejection, applies op,
/// and counts outputs satisfying `target`. Pass iff hits == expected_hits
/// when that is given, otherwise always (a measurement). Needs
/// samples >= 1e5 unless `allow_small` is set.
struct ProbeConfig {
    std::uint64_t samples = 100'000;
    std::uint64_t seed = 1;
    std::uint64_t max_rejections = 100'000;
    std::optional<std::uint64_t> expected_hits;
    bool allow_small = false;
};

[[nodiscard]] ProbeReport jump_probability_probe(std::size_t n, const Predicate& source, const Predicate& target,
                                                 const UnaryOperator& op, const ProbeConfig& config);

/// {x : 2n/5 <= |x|_1 <= 3n/5}
[[nodiscard]] Predicate g_prime_predicate(std::size_t n);

// ---------------------------------------------------------------------------

/// Counts lemma violations along a run. Attach with hooks(); the monitor
/// must outlive the run.
class InvariantMonitor {
public:
    explicit InvariantMonitor(const Problem& problem, std::size_t mu = 0);

    /// Adds the checks to `base`, chaining any callbacks already set there.
    [[nodiscard]] RunHooks hooks(RunHooks base = {});

    [[nodiscard]] std::uint64_t checks() const noexcept { return checks_; }
    [[nodiscard]] std::uint64_t violations() const noexcept { return violations_; }
    /// First few violation summaries.
    [[nodiscard]] const std::vector<std::string>& messages() const noexcept { return messages_; }

    void check_population(std::span<const Individual> pop);
    void check_survival(std::span<const Individual> merged, const Layering& layering,
                        std::span<const std::size_t> survivors);

private:
    void record(const OracleReport& r);

    const Problem* problem_;
    std::size_t mu_;
    std::uint64_t checks_ = 0;
    std::uint64_t violations_ = 0;
    std::vector<std::string> messages_;
};

} // namespace emo
