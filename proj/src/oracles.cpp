#include "emo/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>

#include "emo/errors.hpp"
#include "parallel.hpp"

namespace emo {

namespace {

constexpr std::uint64_t kChunkSamples = 1 << 16;

std::uint64_t chunk_count(std::uint64_t samples)
{
    return (samples + kChunkSamples - 1) / kChunkSamples;
}

std::uint64_t chunk_size(std::uint64_t samples, std::uint64_t chunk)
{
    return std::min(kChunkSamples, samples - chunk * kChunkSamples);
}

std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk)
{
    return splitmix64(seed ^ splitmix64(chunk + 0x51ed2701ULL));
}

BitString from_index(std::size_t n, std::uint64_t v)
{
    BitString x(n);
    x.set_word(0, v);
    return x;
}

std::size_t ones_in(const std::string& s, std::size_t pos, std::size_t len)
{
    return static_cast<std::size_t>(std::count(s.begin() + static_cast<long>(pos),
                                               s.begin() + static_cast<long>(pos + len), '1'));
}

} // namespace

std::string OracleReport::summary() const
{
    std::ostringstream os;
    os << (pass ? "PASS" : "FAIL") << " " << claim;
    if (precondition_failed) {
        os << " [precondition failed]";
    }
    if (!observed.empty()) {
        os << ": " << observed;
    }
    if (samples != 0) {
        os << " (samples=" << samples << ")";
    }
    if (counterexample) {
        os << " counterexample: " << *counterexample;
    }
    return os.str();
}

// ---------------------------------------------------------------------------

ParetoSet brute_force_pareto(const Problem& problem)
{
    const std::size_t n = problem.n();
    if (n > kMaxBruteForceBits) {
        throw SizeLimitError("exhaustive Pareto search is limited to n <= " + std::to_string(kMaxBruteForceBits)
                             + ", got n=" + std::to_string(n));
    }
    const std::uint64_t total = std::uint64_t{1} << n;

    // distinct fitness vectors per chunk
    auto partial = detail::map_chunks(chunk_count(total), [&](std::uint64_t c) {
        std::set<Fitness> seen;
        const std::uint64_t begin = c * kChunkSamples;
        for (std::uint64_t v = begin; v < begin + chunk_size(total, c); ++v) {
            seen.insert(problem.evaluate(from_index(n, v)));
        }
        return seen;
    });
    std::set<Fitness> distinct;
    for (auto& s : partial) {
        distinct.merge(s);
    }

    // plain pairwise dominance among distinct vectors
    std::vector<Fitness> all(distinct.begin(), distinct.end());
    std::set<Fitness> front;
    for (const auto& a : all) {
        bool dominated = false;
        for (const auto& b : all) {
            if (b.f1 >= a.f1 && b.f2 >= a.f2 && (b.f1 > a.f1 || b.f2 > a.f2)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) {
            front.insert(a);
        }
    }

    auto pre = detail::map_chunks(chunk_count(total), [&](std::uint64_t c) {
        std::vector<BitString> found;
        const std::uint64_t begin = c * kChunkSamples;
        for (std::uint64_t v = begin; v < begin + chunk_size(total, c); ++v) {
            BitString x = from_index(n, v);
            if (front.contains(problem.evaluate(x))) {
                found.push_back(std::move(x));
            }
        }
        return found;
    });

    ParetoSet out;
    out.fitness_vectors.assign(front.begin(), front.end());
    for (auto& chunk : pre) {
        for (auto& x : chunk) {
            out.preimages.push_back(std::move(x));
        }
    }
    std::sort(out.preimages.begin(), out.preimages.end(),
              [](const BitString& a, const BitString& b) { return a.to_string() < b.to_string(); });
    return out;
}

// ---------------------------------------------------------------------------

OracleReport antichain_bound_check(std::span<const Individual> set, const Problem& problem)
{
    OracleReport r;
    r.claim = "antichain-bound";
    r.samples = set.size();
    for (std::size_t i = 0; i < set.size(); ++i) {
        for (std::size_t j = i + 1; j < set.size(); ++j) {
            const Fitness& a = set[i].fitness;
            const Fitness& b = set[j].fitness;
            const bool a_ge = a.f1 >= b.f1 && a.f2 >= b.f2;
            const bool b_ge = b.f1 >= a.f1 && b.f2 >= a.f2;
            if (a_ge || b_ge) {
                r.precondition_failed = true;
                r.counterexample = set[i].genome.to_string() + " " + to_string(a) + " vs " + set[j].genome.to_string()
                                   + " " + to_string(b);
                r.observed = "input is not a set of mutually non-dominated points";
                return r;
            }
        }
    }
    if (set.empty()) {
        r.pass = true;
        r.observed = "empty set";
        return r;
    }

    const std::size_t n = problem.n();
    std::size_t bound = 0;
    const bool has_zero =
        std::any_of(set.begin(), set.end(), [](const Individual& x) { return x.fitness == Fitness{}; });
    if (has_zero) {
        bound = 1;
    } else if (problem.rrrmo() != nullptr) {
        const std::size_t k = set.front().genome.count_ones();
        for (const auto& x : set) {
            if (x.genome.count_ones() != k) {
                r.observed = "members of G with different numbers of ones are mutually non-dominated";
                r.counterexample = set.front().genome.to_string() + " vs " + x.genome.to_string();
                return r;
            }
        }
        bound = k == 0 ? 1 : n - k + 1;
    } else {
        bound = n;
    }
    r.tolerance = static_cast<double>(bound);
    r.pass = set.size() <= bound;
    r.observed = "size " + std::to_string(set.size()) + " <= bound " + std::to_string(bound);
    if (!r.pass) {
        r.counterexample = "antichain of size " + std::to_string(set.size());
    }
    return r;
}

OracleReport protect_layer_check(std::span<const Individual> merged, const Layering& layering,
                                 std::span<const std::size_t> survivors, std::size_t mu)
{
    OracleReport r;
    r.claim = "protect-layer";
    if (layering.layers.empty()) {
        r.pass = merged.empty();
        r.observed = "no layers";
        return r;
    }
    const auto& first = layering.layers.front();
    std::set<Fitness> vectors;
    std::size_t positive = 0;
    for (const auto idx : first) {
        vectors.insert(merged[idx].fitness);
        if (layering.cdist[idx] > 0.0) {
            ++positive;
        }
    }
    const std::size_t m = vectors.size();
    r.samples = first.size();
    r.tolerance = static_cast<double>(4 * m);
    const bool part_one = positive <= 4 * m;

    bool part_two = true;
    std::string missing;
    if (!survivors.empty() && mu >= 4 * m) {
        std::set<Fitness> kept;
        for (const auto idx : survivors) {
            kept.insert(merged[idx].fitness);
        }
        for (const auto& f : vectors) {
            if (!kept.contains(f)) {
                part_two = false;
                missing = to_string(f);
                break;
            }
        }
    }
    r.pass = part_one && part_two;
    r.observed = std::to_string(positive) + " positive-distance members for m=" + std::to_string(m)
                 + " vectors; survivors " + (part_two ? "cover" : "miss") + " the first layer";
    if (!part_one) {
        r.counterexample = std::to_string(positive) + " > " + std::to_string(4 * m);
    } else if (!part_two) {
        r.counterexample = "lost first-layer vector " + missing + " with mu=" + std::to_string(mu);
    }
    return r;
}

// ---------------------------------------------------------------------------

SubsetPredicates reference_subset_predicates(std::size_t n)
{
    const std::size_t eighth = n / 8;
    SubsetPredicates p;
    p.in_u = [n, eighth](const BitString& half) {
        const std::string s = half.to_string();
        for (std::size_t i = 0; i < 4; ++i) {
            const std::size_t c = ones_in(s, i * eighth, eighth);
            if (24 * c < n || 12 * c > n) {
                return false;
            }
        }
        return true;
    };
    // 1...10...0
    p.in_p = [](const BitString& half) { return half.to_string().find("01") == std::string::npos; };
    // 1..10..0 or 0..01..1
    p.in_c = [](const BitString& half) {
        const std::string s = half.to_string();
        return s.find("01") == std::string::npos || s.find("10") == std::string::npos;
    };
    p.in_t = [n, eighth](const BitString& half) {
        const std::string s = half.to_string();
        for (std::size_t i = 0; i < 4; ++i) {
            if (16 * ones_in(s, i * eighth, eighth) != n) {
                return false;
            }
        }
        return true;
    };
    return p;
}

OracleReport hamming_bounds_check(std::size_t n, std::uint64_t sample_size, std::uint64_t seed)
{
    return hamming_bounds_check(n, sample_size, seed, reference_subset_predicates(n));
}

OracleReport hamming_bounds_check(std::size_t n, std::uint64_t sample_size, std::uint64_t seed,
                                  const SubsetPredicates& predicates)
{
    if (n == 0 || n % 16 != 0) {
        throw std::invalid_argument("Hamming bounds need n divisible by 16, got " + std::to_string(n));
    }
    const std::size_t half = n / 2;
    OracleReport r;
    r.claim = "hamming-bounds";

    // closed intervals, scaled by 16 to stay integral
    const auto up_ok = [n](std::size_t d) { return 8 * d >= n && 8 * d <= 3 * n; };
    const auto ct_ok = [n](std::size_t d) { return 16 * d >= 3 * n && 16 * d <= 5 * n; };

    std::size_t up_min = n;
    std::size_t up_max = 0;
    std::size_t ct_min = n;
    std::size_t ct_max = 0;
    auto visit = [&](const BitString& a, const BitString& b, bool left) {
        const std::size_t d = hamming(a, b);
        ++r.samples;
        if (left) {
            up_min = std::min(up_min, d);
            up_max = std::max(up_max, d);
        } else {
            ct_min = std::min(ct_min, d);
            ct_max = std::max(ct_max, d);
        }
        if (!r.counterexample && !(left ? up_ok(d) : ct_ok(d))) {
            r.counterexample = std::string(left ? "U " : "C ") + a.to_string() + (left ? " vs P " : " vs T ")
                               + b.to_string() + " at distance " + std::to_string(d);
        }
    };

    bool enumerated = false;
    if (half <= 16) {
        std::vector<BitString> u;
        std::vector<BitString> p;
        std::vector<BitString> c;
        std::vector<BitString> t;
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << half); ++v) {
            const BitString h = from_index(half, v);
            if (predicates.in_u(h)) {
                u.push_back(h);
            }
            if (predicates.in_p(h)) {
                p.push_back(h);
            }
            if (predicates.in_c(h)) {
                c.push_back(h);
            }
            if (predicates.in_t(h)) {
                t.push_back(h);
            }
        }
        if (u.size() * p.size() <= kMaxEnumeratedPairs && c.size() * t.size() <= kMaxEnumeratedPairs) {
            enumerated = true;
            for (const auto& a : u) {
                for (const auto& b : p) {
                    visit(a, b, true);
                }
            }
            for (const auto& a : c) {
                for (const auto& b : t) {
                    visit(a, b, false);
                }
            }
        }
    }

    if (!enumerated) {
        Rng rng(seed);
        const std::size_t eighth = n / 8;
        auto draw = [&](const std::function<BitString()>& gen, const std::function<bool(const BitString&)>& pred,
                        const char* name) {
            for (int attempt = 0; attempt < 100000; ++attempt) {
                BitString h = gen();
                if (pred(h)) {
                    return h;
                }
            }
            throw std::runtime_error(std::string("could not sample a member of ") + name);
        };
        auto uniform_half = [&] { return random_bitstring(half, rng); };
        auto path_point = [&] {
            BitString h(half);
            const auto a = rng.below(half + 1);
            for (std::size_t i = 0; i < a; ++i) {
                h.set(i, true);
            }
            return h;
        };
        auto circle_point = [&] {
            BitString h = path_point();
            return rng.coin() ? h.complement() : h;
        };
        auto target_point = [&] {
            BitString h(half);
            for (std::size_t b = 0; b < 4; ++b) {
                // Floyd's subset of n/16 positions inside the block
                for (std::size_t j = eighth - n / 16; j < eighth; ++j) {
                    const auto t = b * eighth + static_cast<std::size_t>(rng.below(j + 1));
                    h.set(h.get(t) ? b * eighth + j : t, true);
                }
            }
            return h;
        };
        for (std::uint64_t s = 0; s < sample_size; ++s) {
            visit(draw(uniform_half, predicates.in_u, "U"), draw(path_point, predicates.in_p, "P"), true);
            visit(draw(circle_point, predicates.in_c, "C"), draw(target_point, predicates.in_t, "T"), false);
        }
    }

    r.pass = !r.counterexample.has_value();
    std::ostringstream os;
    os << (enumerated ? "enumerated" : "sampled") << " n=" << n << ": H(U,P) in [" << up_min << "," << up_max
       << "] vs [" << n / 8.0 << "," << 3 * n / 8.0 << "], H(C,T) in [" << ct_min << "," << ct_max << "] vs ["
       << 3 * n / 16.0 << "," << 5 * n / 16.0 << "]";
    r.observed = os.str();
    return r;
}

// ---------------------------------------------------------------------------

FlipFrequencyReport operator_flip_frequency(const UnaryOperator& op, const BitString& x, double expected_rate,
                                            std::uint64_t samples, std::uint64_t seed)
{
    if (samples < 10'000) {
        throw std::invalid_argument("flip-frequency estimates need at least 1e4 samples");
    }
    const std::size_t n = x.size();
    auto partial = detail::map_chunks(chunk_count(samples), [&](std::uint64_t c) {
        Rng rng(chunk_seed(seed, c));
        std::vector<std::uint64_t> counts(n, 0);
        for (std::uint64_t s = 0; s < chunk_size(samples, c); ++s) {
            const BitString y = op(x, rng);
            for (std::size_t w = 0; w < x.word_count(); ++w) {
                auto diff = x.word(w) ^ y.word(w);
                while (diff != 0) {
                    ++counts[w * BitString::kWordBits + static_cast<std::size_t>(std::countr_zero(diff))];
                    diff &= diff - 1;
                }
            }
        }
        return counts;
    });

    FlipFrequencyReport out;
    out.expected_rate = expected_rate;
    out.rates.assign(n, 0.0);
    for (const auto& counts : partial) {
        for (std::size_t i = 0; i < n; ++i) {
            out.rates[i] += static_cast<double>(counts[i]);
        }
    }
    const auto total = static_cast<double>(samples);
    const double sigma = std::sqrt(expected_rate * (1.0 - expected_rate) / total);
    out.band = 3.0 * sigma;
    std::optional<std::size_t> worst_outside;
    for (std::size_t i = 0; i < n; ++i) {
        out.rates[i] /= total;
        const double dev = std::abs(out.rates[i] - expected_rate);
        const double z = sigma > 0.0 ? dev / sigma : (dev == 0.0 ? 0.0 : kInfiniteDistance);
        out.max_abs_z = std::max(out.max_abs_z, z);
        if (dev > out.band && !worst_outside) {
            worst_outside = i;
        }
    }
    out.report.claim = "flip-frequency";
    out.report.samples = samples;
    out.report.tolerance = out.band;
    out.report.pass = !worst_outside;
    std::ostringstream os;
    os << "expected " << expected_rate << " +- " << out.band << ", max |z| = " << out.max_abs_z;
    out.report.observed = os.str();
    if (worst_outside) {
        out.report.counterexample = "position " + std::to_string(*worst_outside + 1) + " rate "
                                    + std::to_string(out.rates[*worst_outside]);
    }
    return out;
}

OracleReport unbiasedness_chi_square(const UnaryOperator& op, const BitString& x, const Permutation& sigma,
                                     const BitString& z, std::uint64_t samples, double alpha, std::uint64_t seed)
{
    const std::size_t n = x.size();
    if (n > 16) {
        throw SizeLimitError("chi-square outcome histogram is limited to n <= 16");
    }
    const std::size_t bins = std::size_t{1} << n;
    const BitString shifted = bit_xor(apply_permutation(x, sigma), z);
    auto partial = detail::map_chunks(chunk_count(samples), [&](std::uint64_t c) {
        Rng rng(chunk_seed(seed, c));
        std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>> h{std::vector<std::uint64_t>(bins, 0),
                                                                            std::vector<std::uint64_t>(bins, 0)};
        for (std::uint64_t s = 0; s < chunk_size(samples, c); ++s) {
            ++h.first[op(shifted, rng).word(0)];
            ++h.second[bit_xor(apply_permutation(op(x, rng), sigma), z).word(0)];
        }
        return h;
    });
    std::vector<double> a(bins, 0.0);
    std::vector<double> b(bins, 0.0);
    for (const auto& h : partial) {
        for (std::size_t i = 0; i < bins; ++i) {
            a[i] += static_cast<double>(h.first[i]);
            b[i] += static_cast<double>(h.second[i]);
        }
    }
    double chi2 = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < bins; ++i) {
        if (a[i] + b[i] > 0.0) {
            chi2 += (a[i] - b[i]) * (a[i] - b[i]) / (a[i] + b[i]);
            ++used;
        }
    }
    OracleReport r;
    r.claim = "unbiasedness-chi-square";
    r.samples = samples;
    r.tolerance = alpha;
    double p = 1.0;
    if (used > 1) {
        const boost::math::chi_squared_distribution<double> dist(static_cast<double>(used - 1));
        p = boost::math::cdf(boost::math::complement(dist, chi2));
    }
    r.pass = p >= alpha;
    std::ostringstream os;
    os << "chi2=" << chi2 << " df=" << (used > 0 ? used - 1 : 0) << " p=" << p;
    r.observed = os.str();
    return r;
}

// ---------------------------------------------------------------------------

ProbeReport jump_probability_probe(std::size_t n, const Predicate& source, const Predicate& target,
                                   const UnaryOperator& op, const ProbeConfig& config)
{
    if (config.samples < 100'000 && !config.allow_small) {
        throw std::invalid_argument("jump probes need at least 1e5 samples");
    }
    struct Partial {
        std::uint64_t hits = 0;
        bool starved = false;
    };
    auto partial = detail::map_chunks(chunk_count(config.samples), [&](std::uint64_t c) {
        Rng rng(chunk_seed(config.seed, c));
        Partial out;
        for (std::uint64_t s = 0; s < chunk_size(config.samples, c); ++s) {
            BitString x;
            bool found = false;
            for (std::uint64_t attempt = 0; attempt < config.max_rejections; ++attempt) {
                x = random_bitstring(n, rng);
                if (source(x)) {
                    found = true;
                    break;
                }
            }
            if (!found) {
                out.starved = true;
                return out;
            }
            if (target(op(x, rng))) {
                ++out.hits;
            }
        }
        return out;
    });

    ProbeReport out;
    out.report.claim = "jump-probe";
    out.report.samples = config.samples;
    bool starved = false;
    for (const auto& p : partial) {
        out.hits += p.hits;
        starved = starved || p.starved;
    }
    if (starved) {
        out.report.pass = false;
        out.report.precondition_failed = true;
        out.report.observed = "no source point found within " + std::to_string(config.max_rejections) + " draws";
        return out;
    }
    out.rate = static_cast<double>(out.hits) / static_cast<double>(config.samples);
    out.upper_bound = boost::math::binomial_distribution<double>::find_upper_bound_on_p(
        static_cast<double>(config.samples), static_cast<double>(out.hits), 0.05);
    out.report.pass = !config.expected_hits || *config.expected_hits == out.hits;
    std::ostringstream os;
    os << out.hits << " hits, rate " << out.rate << ", 95% upper bound " << out.upper_bound;
    out.report.observed = os.str();
    return out;
}

Predicate g_prime_predicate(std::size_t n)
{
    return [n](const BitString& x) {
        const std::size_t ones = x.count_ones();
        return 5 * ones >= 2 * n && 5 * ones <= 3 * n;
    };
}

// ---------------------------------------------------------------------------

InvariantMonitor::InvariantMonitor(const Problem& problem, std::size_t mu)
    : problem_(&problem)
    , mu_(mu)
{
}

void InvariantMonitor::record(const OracleReport& r)
{
    ++checks_;
    if (!r.pass) {
        ++violations_;
        if (messages_.size() < 8) {
            messages_.push_back(r.summary());
        }
    }
}

void InvariantMonitor::check_population(std::span<const Individual> pop)
{
    record(antichain_bound_check(pop, *problem_));
}

void InvariantMonitor::check_survival(std::span<const Individual> merged, const Layering& layering,
                                      std::span<const std::size_t> survivors)
{
    if (layering.layers.empty()) {
        return;
    }
    record(protect_layer_check(merged, layering, survivors, mu_));
    // one representative per first-layer fitness vector
    std::vector<Individual> reps;
    std::set<Fitness> seen;
    for (const auto idx : layering.layers.front()) {
        if (seen.insert(merged[idx].fitness).second) {
            reps.push_back(merged[idx]);
        }
    }
    record(antichain_bound_check(reps, *problem_));
}

RunHooks InvariantMonitor::hooks(RunHooks base)
{
    RunHooks h = std::move(base);
    h.on_population_change = [this, prev = std::move(h.on_population_change)](std::span<const Individual> pop) {
        check_population(pop);
        if (prev) {
            prev(pop);
        }
    };
    h.on_survival = [this, prev = std::move(h.on_survival)](std::span<const Individual> merged,
                                                            const Layering& layering,
                                                            std::span<const std::size_t> survivors) {
        check_survival(merged, layering, survivors);
        if (prev) {
            prev(merged, layering, survivors);
        }
    };
    return h;
}

} // namespace emo
