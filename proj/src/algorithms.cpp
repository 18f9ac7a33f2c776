#include "emo/algorithms.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace emo {

namespace {

// (layer asc, score desc); true if a is strictly better than b
bool better(const RankKey& a, const RankKey& b) noexcept
{
    if (a.layer != b.layer) {
        return a.layer < b.layer;
    }
    return a.score > b.score;
}

std::size_t tournament_on_keys(std::span<const RankKey> keys, Rng& rng)
{
    const auto a = static_cast<std::size_t>(rng.below(keys.size()));
    const auto b = static_cast<std::size_t>(rng.below(keys.size()));
    if (better(keys[a], keys[b])) {
        return a;
    }
    if (better(keys[b], keys[a])) {
        return b;
    }
    return rng.coin() ? a : b;
}

std::vector<RankKey> keys_of(const Layering& layering)
{
    std::vector<RankKey> keys(layering.rank.size());
    for (std::size_t i = 0; i < keys.size(); ++i) {
        keys[i] = {layering.rank[i], layering.cdist[i]};
    }
    return keys;
}

std::vector<std::size_t> stable_order(std::span<const RankKey> keys)
{
    std::vector<std::size_t> order(keys.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return better(keys[a], keys[b]); });
    return order;
}

// Two children per tournament pair, appended to `out`.
void produce_pair(std::span<const Individual> pop, std::span<const RankKey> keys, const Variation& variation,
                  Rng& rng, std::vector<BitString>& out)
{
    const std::size_t p1 = tournament_on_keys(keys, rng);
    const std::size_t p2 = tournament_on_keys(keys, rng);
    Offspring children = rng.uniform01() < variation.pc
                             ? crossover(variation.crossover, pop[p1].genome, pop[p2].genome, rng)
                             : Offspring{pop[p1].genome, pop[p2].genome};
    out.push_back(variation.mutation.apply(children.first, rng));
    out.push_back(variation.mutation.apply(children.second, rng));
}

void require_even_mu(std::size_t mu)
{
    if (mu < 2 || mu % 2 != 0) {
        throw std::invalid_argument("NSGA-II needs an even population size >= 2, got " + std::to_string(mu));
    }
}

} // namespace

std::vector<Fitness> fitness_of(std::span<const Individual> pop)
{
    std::vector<Fitness> out;
    out.reserve(pop.size());
    for (const auto& ind : pop) {
        out.push_back(ind.fitness);
    }
    return out;
}

BitString random_bitstring(std::size_t n, Rng& rng)
{
    BitString x(n);
    for (std::size_t w = 0; w < x.word_count(); ++w) {
        x.set_word(w, rng.next_u64());
    }
    return x;
}

std::vector<std::vector<std::size_t>> nondominated_sort(std::span<const Fitness> fitness)
{
    // Sweep in (f1 desc, f2 desc) order. Only earlier points can dominate a
    // point, and the last point added to a layer has the largest f2 there,
    // so "some member of layer k dominates p" reduces to a check against
    // that last point. The check is monotone in k, hence binary search.
    std::vector<std::size_t> order(fitness.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (fitness[a].f1 != fitness[b].f1) {
            return fitness[a].f1 > fitness[b].f1;
        }
        return fitness[a].f2 > fitness[b].f2;
    });

    std::vector<std::vector<std::size_t>> layers;
    std::vector<Fitness> last;
    for (const std::size_t p : order) {
        const Fitness& f = fitness[p];
        auto dominated_by_layer = [&](std::size_t k) {
            return last[k].f2 > f.f2 || (last[k].f2 == f.f2 && last[k].f1 > f.f1);
        };
        std::size_t lo = 0;
        std::size_t hi = layers.size();
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (dominated_by_layer(mid)) {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        if (lo == layers.size()) {
            layers.emplace_back();
            last.push_back(f);
        }
        layers[lo].push_back(p);
        last[lo] = f;
    }
    for (auto& layer : layers) {
        std::sort(layer.begin(), layer.end());
    }
    return layers;
}

std::vector<double> crowding_distance(std::span<const Fitness> layer)
{
    const std::size_t k = layer.size();
    std::vector<double> dist(k, 0.0);
    if (k == 0) {
        return dist;
    }
    std::vector<std::size_t> order(k);
    for (const auto objective : {&Fitness::f1, &Fitness::f2}) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return layer[a].*objective > layer[b].*objective; });
        dist[order.front()] = kInfiniteDistance;
        dist[order.back()] = kInfiniteDistance;
        const auto range = static_cast<double>(layer[order.front()].*objective - layer[order.back()].*objective);
        if (range == 0.0) {
            continue;
        }
        for (std::size_t i = 1; i + 1 < k; ++i) {
            const auto gap =
                static_cast<double>(layer[order[i - 1]].*objective - layer[order[i + 1]].*objective);
            dist[order[i]] += gap / range;
        }
    }
    return dist;
}

Layering compute_layering(std::span<const Fitness> fitness)
{
    Layering out;
    out.layers = nondominated_sort(fitness);
    out.rank.assign(fitness.size(), 0);
    out.cdist.assign(fitness.size(), 0.0);
    std::vector<Fitness> scratch;
    for (std::size_t l = 0; l < out.layers.size(); ++l) {
        const auto& members = out.layers[l];
        scratch.clear();
        for (const auto idx : members) {
            out.rank[idx] = l;
            scratch.push_back(fitness[idx]);
        }
        const auto d = crowding_distance(scratch);
        for (std::size_t i = 0; i < members.size(); ++i) {
            out.cdist[members[i]] = d[i];
        }
    }
    return out;
}

std::vector<std::size_t> survival_order(const Layering& layering)
{
    return stable_order(keys_of(layering));
}

std::size_t binary_tournament(const Layering& layering, Rng& rng)
{
    const auto keys = keys_of(layering);
    return tournament_on_keys(keys, rng);
}

std::size_t covered_front_vectors(std::span<const Individual> pop, const Problem& problem)
{
    std::vector<char> seen(problem.front_size(), 0);
    std::size_t covered = 0;
    for (const auto& ind : pop) {
        if (const auto idx = problem.front_index(ind.fitness); idx && seen[*idx] == 0) {
            seen[*idx] = 1;
            ++covered;
        }
    }
    return covered;
}

double front_coverage(std::span<const Individual> pop, const Problem& problem)
{
    return static_cast<double>(covered_front_vectors(pop, problem)) / static_cast<double>(problem.front_size());
}

// ---------------------------------------------------------------------------

Gsemo::Gsemo(const Problem& problem, Variation variation, Rng& rng, RunHooks hooks)
    : problem_(&problem)
    , variation_(std::move(variation))
    , rng_(&rng)
    , hooks_(std::move(hooks))
{
    Individual first{random_bitstring(problem.n(), rng), {}};
    first.fitness = problem.evaluate(first.genome);
    note_evaluation(first);
    pop_.push_back(std::move(first));
    covered_ = covered_front_vectors(pop_, *problem_);
    if (hooks_.on_population_change) {
        hooks_.on_population_change(pop_);
    }
}

Gsemo::Gsemo(const Problem& problem, Variation variation, Rng& rng, Population initial, RunHooks hooks)
    : problem_(&problem)
    , variation_(std::move(variation))
    , rng_(&rng)
    , hooks_(std::move(hooks))
    , pop_(std::move(initial))
{
    if (pop_.empty()) {
        throw std::invalid_argument("GSEMO needs a non-empty initial population");
    }
    covered_ = covered_front_vectors(pop_, *problem_);
}

void Gsemo::note_evaluation(const Individual& ind)
{
    ++evaluations_;
    if (!first_hit_ && problem_->is_pareto_fitness(ind.fitness)) {
        first_hit_ = evaluations_;
    }
    if (hooks_.on_evaluation) {
        hooks_.on_evaluation(ind);
    }
}

bool Gsemo::offer(Individual candidate)
{
    bool fitness_present = false;
    for (const auto& member : pop_) {
        const auto rel = compare(member.fitness, candidate.fitness);
        if (rel == Dominance::Dominates) {
            return false;
        }
        fitness_present = fitness_present || rel == Dominance::Equal;
    }
    std::erase_if(pop_, [&](const Individual& m) { return weakly_dominates(candidate.fitness, m.fitness); });
    pop_.push_back(std::move(candidate));
    if (!fitness_present) {
        covered_ = covered_front_vectors(pop_, *problem_);
        if (hooks_.on_population_change) {
            hooks_.on_population_change(pop_);
        }
    }
    return true;
}

void Gsemo::step()
{
    Rng& rng = *rng_;
    const auto p1 = static_cast<std::size_t>(rng.below(pop_.size()));
    BitString s;
    if (rng.uniform01() < variation_.pc) {
        const auto p2 = static_cast<std::size_t>(rng.below(pop_.size()));
        s = pick_one_offspring(crossover(variation_.crossover, pop_[p1].genome, pop_[p2].genome, rng), rng);
    } else {
        s = pop_[p1].genome;
    }
    Individual child{variation_.mutation.apply(s, rng), {}};
    child.fitness = problem_->evaluate(child.genome);
    ++generations_;
    note_evaluation(child);
    offer(std::move(child));
}

RunResult Gsemo::result() const
{
    RunResult r;
    r.evaluations = evaluations_;
    r.generations = generations_;
    r.first_pareto_hit = first_hit_;
    r.covered = covered_;
    r.coverage = static_cast<double>(covered_) / static_cast<double>(problem_->front_size());
    r.success = covered_ == problem_->front_size();
    return r;
}

RunResult gsemo_run(const Problem& problem, const Variation& variation, std::uint64_t budget, Rng& rng,
                    const RunHooks& hooks)
{
    Gsemo algo(problem, variation, rng, hooks);
    while (!algo.result().success && algo.result().evaluations < budget) {
        algo.step();
    }
    return algo.result();
}

// ---------------------------------------------------------------------------

Nsga2::Nsga2(const Problem& problem, Variation variation, std::size_t mu, Rng& rng, RunHooks hooks)
    : problem_(&problem)
    , variation_(std::move(variation))
    , mu_(mu)
    , rng_(&rng)
    , hooks_(std::move(hooks))
{
    require_even_mu(mu);
    pop_.reserve(mu);
    for (std::size_t i = 0; i < mu; ++i) {
        pop_.push_back({random_bitstring(problem.n(), rng), {}});
    }
    for (auto& ind : pop_) {
        ind.fitness = problem.evaluate(ind.genome);
        note_evaluation(ind);
    }
    layering_ = compute_layering(fitness_of(pop_));
    update_coverage();
}

void Nsga2::note_evaluation(const Individual& ind)
{
    ++evaluations_;
    if (!first_hit_ && problem_->is_pareto_fitness(ind.fitness)) {
        first_hit_ = evaluations_;
    }
    if (hooks_.on_evaluation) {
        hooks_.on_evaluation(ind);
    }
}

void Nsga2::update_coverage()
{
    covered_ = covered_front_vectors(pop_, *problem_);
}

void Nsga2::step()
{
    Rng& rng = *rng_;
    const auto keys = keys_of(layering_);
    std::vector<BitString> children;
    children.reserve(mu_);
    for (std::size_t i = 0; i < mu_ / 2; ++i) {
        produce_pair(pop_, keys, variation_, rng, children);
    }

    Population merged = pop_;
    merged.reserve(2 * mu_);
    for (auto& genome : children) {
        Individual child{std::move(genome), {}};
        child.fitness = problem_->evaluate(child.genome);
        note_evaluation(child);
        merged.push_back(std::move(child));
    }

    const Layering merged_layering = compute_layering(fitness_of(merged));
    auto order = survival_order(merged_layering);
    order.resize(mu_);
    if (hooks_.on_survival) {
        hooks_.on_survival(merged, merged_layering, order);
    }

    Population next;
    next.reserve(mu_);
    Layering carried;
    carried.rank.reserve(mu_);
    carried.cdist.reserve(mu_);
    for (const auto idx : order) {
        next.push_back(std::move(merged[idx]));
        carried.rank.push_back(merged_layering.rank[idx]);
        carried.cdist.push_back(merged_layering.cdist[idx]);
    }
    // Layer membership lists follow the new positions.
    for (std::size_t i = 0; i < carried.rank.size(); ++i) {
        if (carried.rank[i] >= carried.layers.size()) {
            carried.layers.resize(carried.rank[i] + 1);
        }
        carried.layers[carried.rank[i]].push_back(i);
    }
    pop_ = std::move(next);
    layering_ = std::move(carried);
    ++generations_;
    update_coverage();
}

RunResult Nsga2::result() const
{
    RunResult r;
    r.evaluations = evaluations_;
    r.generations = generations_;
    r.first_pareto_hit = first_hit_;
    r.covered = covered_;
    r.coverage = static_cast<double>(covered_) / static_cast<double>(problem_->front_size());
    r.success = covered_ == problem_->front_size();
    return r;
}

RunResult nsgaii_run(const Problem& problem, const Variation& variation, std::size_t mu, std::uint64_t budget,
                     Rng& rng, const RunHooks& hooks)
{
    require_even_mu(mu);
    if (budget < mu) {
        throw std::invalid_argument("NSGA-II budget " + std::to_string(budget) + " is below mu=" + std::to_string(mu));
    }
    Nsga2 algo(problem, variation, mu, rng, hooks);
    while (!algo.result().success && algo.result().evaluations + mu <= budget) {
        algo.step();
    }
    return algo.result();
}

// ---------------------------------------------------------------------------

ElitistBlackBox::ElitistBlackBox(const Problem& problem, std::size_t mu, std::size_t lambda, OffspringFn sample,
                                 RankingFn rank, Rng& rng, RunHooks hooks)
    : problem_(&problem)
    , mu_(mu)
    , lambda_(lambda)
    , sample_(std::move(sample))
    , rank_(std::move(rank))
    , rng_(&rng)
    , hooks_(std::move(hooks))
{
    if (mu == 0) {
        throw std::invalid_argument("black-box population size must be positive");
    }
    pop_.reserve(mu);
    for (std::size_t i = 0; i < mu; ++i) {
        pop_.push_back({random_bitstring(problem.n(), rng), {}});
    }
    for (auto& ind : pop_) {
        ind.fitness = problem.evaluate(ind.genome);
        note_evaluation(ind);
    }
    keys_ = rank_(pop_);
    covered_ = covered_front_vectors(pop_, *problem_);
}

void ElitistBlackBox::note_evaluation(const Individual& ind)
{
    ++evaluations_;
    if (!first_hit_ && problem_->is_pareto_fitness(ind.fitness)) {
        first_hit_ = evaluations_;
    }
    if (hooks_.on_evaluation) {
        hooks_.on_evaluation(ind);
    }
}

void ElitistBlackBox::step()
{
    auto children = lambda_ == 0 ? std::vector<BitString>{} : sample_(pop_, keys_, *rng_);
    if (children.size() != lambda_) {
        throw std::logic_error("offspring sampler returned " + std::to_string(children.size())
                               + " genomes, expected " + std::to_string(lambda_));
    }
    Population merged = pop_;
    for (auto& genome : children) {
        Individual child{std::move(genome), {}};
        child.fitness = problem_->evaluate(child.genome);
        note_evaluation(child);
        merged.push_back(std::move(child));
    }
    const auto keys = rank_(merged);
    auto order = stable_order(keys);
    order.resize(mu_);
    if (hooks_.on_survival) {
        hooks_.on_survival(merged, Layering{}, order);
    }
    Population next;
    std::vector<RankKey> next_keys;
    next.reserve(mu_);
    next_keys.reserve(mu_);
    for (const auto idx : order) {
        next.push_back(std::move(merged[idx]));
        next_keys.push_back(keys[idx]);
    }
    pop_ = std::move(next);
    keys_ = std::move(next_keys);
    ++generations_;
    covered_ = covered_front_vectors(pop_, *problem_);
}

RunResult ElitistBlackBox::result() const
{
    RunResult r;
    r.evaluations = evaluations_;
    r.generations = generations_;
    r.first_pareto_hit = first_hit_;
    r.covered = covered_;
    r.coverage = static_cast<double>(covered_) / static_cast<double>(problem_->front_size());
    r.success = covered_ == problem_->front_size();
    return r;
}

RunResult elitist_blackbox_run(const Problem& problem, std::size_t mu, std::size_t lambda, OffspringFn sample,
                               RankingFn rank, std::uint64_t budget, Rng& rng, const RunHooks& hooks)
{
    ElitistBlackBox algo(problem, mu, lambda, std::move(sample), std::move(rank), rng, hooks);
    // lambda = 0 never spends evaluations; one generation keeps the contract observable
    if (lambda == 0) {
        algo.step();
        return algo.result();
    }
    while (!algo.result().success && algo.result().evaluations + lambda <= budget) {
        algo.step();
    }
    return algo.result();
}

std::vector<RankKey> layer_crowding_ranking(std::span<const Individual> pop)
{
    return keys_of(compute_layering(fitness_of(pop)));
}

OffspringFn nsga2_offspring(Variation variation)
{
    return [variation = std::move(variation)](std::span<const Individual> pop, std::span<const RankKey> keys,
                                              Rng& rng) {
        std::vector<BitString> out;
        out.reserve(pop.size());
        for (std::size_t i = 0; i < pop.size() / 2; ++i) {
            produce_pair(pop, keys, variation, rng, out);
        }
        return out;
    };
}

OffspringFn mutation_offspring(MutationOperator mutation, std::size_t lambda)
{
    return [mutation = std::move(mutation), lambda](std::span<const Individual> pop, std::span<const RankKey>,
                                                    Rng& rng) {
        std::vector<BitString> out;
        out.reserve(lambda);
        for (std::size_t i = 0; i < lambda; ++i) {
            out.push_back(mutation.apply(pop[rng.below(pop.size())].genome, rng));
        }
        return out;
    };
}

} // namespace emo
