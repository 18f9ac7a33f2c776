#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "emo/errors.hpp"
#include "emo/oracles.hpp"

using emo::BitString;
using emo::Fitness;
using emo::Individual;
using emo::Rng;

namespace {

Individual rrrmo_point(const std::string& bits)
{
    const auto x = BitString::parse(bits);
    return {x, emo::rrrmo_eval(x, bits.size())};
}

} // namespace

TEST_CASE("brute force pareto on RRRMO")
{
    const emo::Problem p5(emo::Rrrmo{5});
    const auto r5 = emo::brute_force_pareto(p5);
    CHECK(r5.fitness_vectors == std::vector<Fitness>{{20, 21}, {21, 20}});
    REQUIRE(r5.preimages.size() == 2);
    CHECK(r5.preimages[0].to_string() == "01111");
    CHECK(r5.preimages[1].to_string() == "11110");

    const emo::Problem p10(emo::Rrrmo{10});
    const auto r10 = emo::brute_force_pareto(p10);
    CHECK(r10.preimages.size() == 3);
    auto closed = p10.front_fitness();
    std::sort(closed.begin(), closed.end());
    CHECK(r10.fitness_vectors == closed);

    CHECK_THROWS_AS((void)emo::brute_force_pareto(emo::Problem(emo::Rrrmo{25})), emo::SizeLimitError);
}

TEST_CASE("antichain bound")
{
    constexpr std::size_t n = 10;
    const emo::Problem p(emo::Rrrmo{n});
    // k = 3 ones: the n-k+1 = 8 windows 0^i 1^3 0^{7-i} are mutually incomparable
    std::vector<Individual> chain;
    for (std::size_t i = 0; i + 3 <= n; ++i) {
        chain.push_back(rrrmo_point(std::string(i, '0') + "111" + std::string(n - 3 - i, '0')));
    }
    REQUIRE(chain.size() == n - 3 + 1);
    auto rep = emo::antichain_bound_check(chain, p);
    CHECK(rep.pass);
    CHECK_FALSE(rep.precondition_failed);
    CHECK(rep.tolerance == 8.0);

    // one more point with k ones cannot be incomparable to all; a non-antichain is rejected
    chain.push_back(rrrmo_point("1100000000"));
    rep = emo::antichain_bound_check(chain, p);
    CHECK_FALSE(rep.pass);
    CHECK(rep.precondition_failed);
    CHECK(rep.counterexample.has_value());

    // exhaustive: every antichain among k-ones strings of G has size <= n-k+1 (checked greedily per k)
    const emo::Problem p5(emo::Rrrmo{5});
    const std::vector<Individual> zero{rrrmo_point("00000")};
    CHECK(emo::antichain_bound_check(zero, p5).pass);

    // uRRRMO bound n
    const emo::Problem u(emo::Urrrmo{16});
    std::vector<Individual> front;
    for (const auto& x : *emo::urrrmo_front(16, true).preimages) {
        if (front.empty() || front.back().fitness != u.evaluate(x)) {
            front.push_back({x, u.evaluate(x)});
        }
    }
    std::sort(front.begin(), front.end(), [](const auto& a, const auto& b) { return a.fitness < b.fitness; });
    front.erase(std::unique(front.begin(), front.end(),
                            [](const auto& a, const auto& b) { return a.fitness == b.fitness; }),
                front.end());
    REQUIRE(front.size() == 9);
    CHECK(emo::antichain_bound_check(front, u).pass);
}

TEST_CASE("antichain bound over a full GSEMO run at n=20")
{
    const emo::Problem p(emo::Rrrmo{20});
    emo::InvariantMonitor mon(p);
    Rng rng(3);
    const emo::Variation var{emo::MutationOperator::standard(20), emo::CrossoverKind::OnePoint, 0.5};
    const auto res = emo::gsemo_run(p, var, 100 * 160000, rng, mon.hooks());
    CHECK(res.success);
    CHECK(mon.checks() > 10);
    CHECK(mon.violations() == 0);
}

TEST_CASE("protect layer")
{
    const emo::Problem p(emo::Rrrmo{20});
    Rng rng(4);
    for (int t = 0; t < 1000; ++t) {
        std::vector<Individual> pop;
        for (int i = 0; i < 200; ++i) {
            // bias towards G so the first layer is interesting
            BitString x(20);
            const auto k = rng.below(13);
            for (std::size_t j = 0; j < k; ++j) {
                x.set(rng.below(20), true);
            }
            pop.push_back({x, p.evaluate(x)});
        }
        const auto lay = emo::compute_layering(emo::fitness_of(pop));
        REQUIRE(emo::protect_layer_check(pop, lay, {}, 0).pass);
    }

    // one fitness vector: at most four positive distances
    std::vector<Individual> same(10, rrrmo_point("01111111111111111000"));
    const auto lay = emo::compute_layering(emo::fitness_of(same));
    std::size_t positive = 0;
    for (double d : lay.cdist) {
        positive += d > 0;
    }
    CHECK(positive <= 4);
    CHECK(emo::protect_layer_check(same, lay, {}, 0).pass);
}

TEST_CASE("protect layer along NSGA-II on uRRRMO n=16")
{
    const emo::Problem p(emo::Urrrmo{16});
    emo::InvariantMonitor mon(p, 80);
    Rng rng(5);
    const emo::Variation var{emo::MutationOperator::standard(16), emo::CrossoverKind::Uniform, 0.5};
    const auto res = emo::nsgaii_run(p, var, 80, 2'000'000, rng, mon.hooks());
    CHECK(res.success);
    CHECK(mon.checks() > 0);
    CHECK(mon.violations() == 0);
}

TEST_CASE("hamming bounds")
{
    auto rep = emo::hamming_bounds_check(16, 0, 1);
    INFO(rep.observed);
    CHECK(rep.pass);
    CHECK(rep.observed.find("enumerated") != std::string::npos);
    // one 1 per 2-bit block against 1^a 0^b: every pair not cut by the
    // boundary costs one mismatch, so the minimum is 3, not the bound 2
    CHECK(rep.observed.find("H(U,P) in [3,5] vs [2,6]") != std::string::npos);
    CHECK(rep.observed.find("H(C,T) in [3,5]") != std::string::npos);

    rep = emo::hamming_bounds_check(32, 0, 1);
    CHECK(rep.pass);
    rep = emo::hamming_bounds_check(48, 100'000, 2);
    CHECK(rep.pass);
    CHECK(rep.observed.find("sampled") != std::string::npos);

    // a corrupted T accepting any string is caught
    auto broken = emo::reference_subset_predicates(16);
    broken.in_t = [](const BitString&) { return true; };
    rep = emo::hamming_bounds_check(16, 0, 1, broken);
    CHECK_FALSE(rep.pass);
    CHECK(rep.counterexample.has_value());

    CHECK_THROWS_AS((void)emo::hamming_bounds_check(20, 10, 1), std::invalid_argument);
}

TEST_CASE("jump probes")
{
    constexpr std::size_t n = 10;
    // identity probe: radius 0 from F lands in F
    const auto in_f = [](const BitString& x) { return emo::rrrmo_membership(x, n).in_f; };
    const auto zero = emo::RadiusDistribution::point(n, 0);
    emo::ProbeConfig cfg;
    cfg.samples = 100'000;
    cfg.max_rejections = 1'000'000;
    auto rep = emo::jump_probability_probe(
        n, in_f, in_f, [&](const BitString& x, Rng& r) { return emo::unary_unbiased_mutation(x, zero, r); }, cfg);
    CHECK(rep.rate == 1.0);

    // never-satisfied source is reported
    cfg.max_rejections = 1000;
    rep = emo::jump_probability_probe(
        n, [](const BitString&) { return false; }, in_f, [](const BitString& x, Rng&) { return x; }, cfg);
    CHECK(rep.report.precondition_failed);
    CHECK_FALSE(rep.report.pass);

    cfg.samples = 10;
    CHECK_THROWS_AS((void)emo::jump_probability_probe(
                        n, in_f, in_f, [](const BitString& x, Rng&) { return x; }, cfg),
                    std::invalid_argument);

    // zero hits gives the textbook 3/N rule of thumb
    cfg.samples = 100'000;
    cfg.max_rejections = 100'000;
    cfg.expected_hits = 0;
    rep = emo::jump_probability_probe(
        n, emo::g_prime_predicate(n), [](const BitString&) { return false; },
        [](const BitString& x, Rng&) { return x; }, cfg);
    CHECK(rep.report.pass);
    CHECK(rep.upper_bound == doctest::Approx(3.0 / 100'000).epsilon(0.01));
}

TEST_CASE("G' predicate")
{
    const auto g = emo::g_prime_predicate(10);
    CHECK(g(BitString::parse("1100110000")));
    CHECK(g(BitString::parse("1110110000")));
    CHECK_FALSE(g(BitString::parse("1000000000")));
    CHECK_FALSE(g(BitString::parse("1111111000")));
}

TEST_CASE("report summary")
{
    emo::OracleReport r;
    r.claim = "x";
    r.pass = false;
    r.counterexample = "101";
    CHECK(r.summary().find("FAIL x") == 0);
    CHECK(r.summary().find("101") != std::string::npos);
}
