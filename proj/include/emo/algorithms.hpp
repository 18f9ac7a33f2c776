#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "emo/bitstring.hpp"
#include "emo/objectives.hpp"
#include "emo/operators.hpp"
#include "emo/rng.hpp"

namespace emo {

struct Individual {
    BitString genome;
    Fitness fitness;
};

using Population = std::vector<Individual>;

/// +infinity crowding distance; ordered above every finite value and
/// absorbing under addition.
inline constexpr double kInfiniteDistance = std::numeric_limits<double>::infinity();

/// Non-dominated layers of a population plus per-individual crowding distance.
struct Layering {
    /// layers[i] lists population indices of layer i+1, ascending.
    std::vector<std::vector<std::size_t>> layers;
    /// 0-based layer of each individual.
    std::vector<std::size_t> rank;
    std::vector<double> cdist;
};

[[nodiscard]] std::vector<Fitness> fitness_of(std::span<const Individual> pop);
[[nodiscard]] BitString random_bitstring(std::size_t n, Rng& rng);

/// Peeling order: layer 1 holds the non-dominated points, layer i those
/// non-dominated once layers 1..i-1 are removed. O(N log N) for two
/// objectives.
[[nodiscard]] std::vector<std::vector<std::size_t>> nondominated_sort(std::span<const Fitness> fitness);

/// Crowding distances of one layer, given in insertion order. Per objective
/// the layer is stably sorted by descending value; both ends get +inf and
/// inner points the neighbour gap normalised by the range (0 if the range
/// is 0).
[[nodiscard]] std::vector<double> crowding_distance(std::span<const Fitness> layer);

[[nodiscard]] Layering compute_layering(std::span<const Fitness> fitness);

/// Indices sorted by (layer asc, cdist desc, index asc).
[[nodiscard]] std::vector<std::size_t> survival_order(const Layering& layering);

/// Winner index of a binary tournament with replacement under
/// (layer asc, cdist desc); exact ties are settled by a fair coin.
[[nodiscard]] std::size_t binary_tournament(const Layering& layering, Rng& rng);

/// Fraction of the problem's Pareto fitness vectors present in pop.
[[nodiscard]] double front_coverage(std::span<const Individual> pop, const Problem& problem);
[[nodiscard]] std::size_t covered_front_vectors(std::span<const Individual> pop, const Problem& problem);

struct Variation {
    MutationOperator mutation;
    CrossoverKind crossover = CrossoverKind::None;
    double pc = 0.0;
};

/// Outcome of one run. evaluations = initial population + offspring.
struct RunResult {
    std::uint64_t evaluations = 0;
    std::uint64_t generations = 0;
    std::optional<std::uint64_t> first_pareto_hit;
    double coverage = 0.0;
    std::size_t covered = 0;
    bool success = false;
};

/// Optional observers. Every callback may be empty.
struct RunHooks {
    /// Each evaluated individual, initial ones included.
    std::function<void(const Individual&)> on_evaluation;
    /// GSEMO: the population after its set of fitness vectors changed.
    std::function<void(std::span<const Individual>)> on_population_change;
    /// NSGA-II and the black-box driver: the merged population, its
    /// layering, and the indices kept for the next generation. The layering
    /// is empty for black-box rankings that are not layer based.
    std::function<void(std::span<const Individual>, const Layering&, std::span<const std::size_t>)> on_survival;
};

// ---------------------------------------------------------------------------

/// Global SEMO with one offspring per generation.
class Gsemo {
public:
    /// Starts from one uniformly random individual (one evaluation).
    Gsemo(const Problem& problem, Variation variation, Rng& rng, RunHooks hooks = {});
    /// Starts from a given mutually non-dominated population; no evaluations are counted.
    Gsemo(const Problem& problem, Variation variation, Rng& rng, Population initial, RunHooks hooks = {});

    /// One generation: exactly one new evaluation.
    void step();
    /// Acceptance rule: rejected iff some member strictly dominates the
    /// candidate; otherwise every member it weakly dominates is removed and
    /// the candidate appended. Returns whether it was accepted.
    bool offer(Individual candidate);

    [[nodiscard]] const Population& population() const noexcept { return pop_; }
    [[nodiscard]] RunResult result() const;

private:
    void note_evaluation(const Individual& ind);

    const Problem* problem_;
    Variation variation_;
    Rng* rng_;
    RunHooks hooks_;
    Population pop_;
    std::uint64_t evaluations_ = 0;
    std::uint64_t generations_ = 0;
    std::optional<std::uint64_t> first_hit_;
    std::size_t covered_ = 0;
};

/// Runs until every Pareto fitness vector is covered or `budget`
/// evaluations are used; the initial evaluation always happens.
[[nodiscard]] RunResult gsemo_run(const Problem& problem, const Variation& variation, std::uint64_t budget, Rng& rng,
                                  const RunHooks& hooks = {});

// ---------------------------------------------------------------------------

class Nsga2 {
public:
    /// Uniform random initial population of size mu (mu evaluations).
    /// Throws std::invalid_argument unless mu is even and >= 2.
    Nsga2(const Problem& problem, Variation variation, std::size_t mu, Rng& rng, RunHooks hooks = {});

    /// One generation: mu offspring, merge, layer, keep the best mu.
    void step();

    [[nodiscard]] const Population& population() const noexcept { return pop_; }
    /// Layer index and crowding distance of each current member, as
    /// computed on the merged population it survived from.
    [[nodiscard]] const Layering& layering() const noexcept { return layering_; }
    [[nodiscard]] RunResult result() const;

private:
    void note_evaluation(const Individual& ind);
    void update_coverage();

    const Problem* problem_;
    Variation variation_;
    std::size_t mu_;
    Rng* rng_;
    RunHooks hooks_;
    Population pop_;
    Layering layering_;
    std::uint64_t evaluations_ = 0;
    std::uint64_t generations_ = 0;
    std::optional<std::uint64_t> first_hit_;
    std::size_t covered_ = 0;
};

/// Whole generations are run while they fit into `budget`.
[[nodiscard]] RunResult nsgaii_run(const Problem& problem, const Variation& variation, std::size_t mu,
                                   std::uint64_t budget, Rng& rng, const RunHooks& hooks = {});

// ---------------------------------------------------------------------------

/// Position in a total order: lower layer first, then higher score.
struct RankKey {
    std::size_t layer = 0;
    double score = 0.0;
};

using RankingFn = std::function<std::vector<RankKey>(std::span<const Individual>)>;
using OffspringFn =
    std::function<std::vector<BitString>(std::span<const Individual>, std::span<const RankKey>, Rng&)>;

/// Elitist (mu + lambda) black-box scheme. Offspring are sampled from the
/// current population and its ranking only; survivors are the mu best of
/// the merged population under a stable sort by the ranking.
class ElitistBlackBox {
public:
    ElitistBlackBox(const Problem& problem, std::size_t mu, std::size_t lambda, OffspringFn sample, RankingFn rank,
                    Rng& rng, RunHooks hooks = {});

    void step();

    [[nodiscard]] const Population& population() const noexcept { return pop_; }
    [[nodiscard]] std::span<const RankKey> ranking() const noexcept { return keys_; }
    [[nodiscard]] RunResult result() const;

private:
    void note_evaluation(const Individual& ind);

    const Problem* problem_;
    std::size_t mu_;
    std::size_t lambda_;
    OffspringFn sample_;
    RankingFn rank_;
    Rng* rng_;
    RunHooks hooks_;
    Population pop_;
    std::vector<RankKey> keys_;
    std::uint64_t evaluations_ = 0;
    std::uint64_t generations_ = 0;
    std::optional<std::uint64_t> first_hit_;
    std::size_t covered_ = 0;
};

[[nodiscard]] RunResult elitist_blackbox_run(const Problem& problem, std::size_t mu, std::size_t lambda,
                                             OffspringFn sample, RankingFn rank, std::uint64_t budget, Rng& rng,
                                             const RunHooks& hooks = {});

/// Non-dominated layer and crowding distance as a ranking.
[[nodiscard]] std::vector<RankKey> layer_crowding_ranking(std::span<const Individual> pop);
/// NSGA-II's variation: mu/2 pairs of tournament parents, crossover with
/// probability pc, mutation of both children.
[[nodiscard]] OffspringFn nsga2_offspring(Variation variation);
/// lambda children, each a mutation of a uniformly chosen parent.
[[nodiscard]] OffspringFn mutation_offspring(MutationOperator mutation, std::size_t lambda);

} // namespace emo
