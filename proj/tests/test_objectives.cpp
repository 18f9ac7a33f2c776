#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>

#include "emo/errors.hpp"
#include "emo/objectives.hpp"
#include "emo/oracles.hpp"
#include "emo/rng.hpp"

using emo::BitString;
using emo::Fitness;

namespace {

BitString random_string(std::size_t n, emo::Rng& rng)
{
    return emo::random_bitstring(n, rng);
}

BitString from_index(std::size_t n, std::uint64_t v)
{
    BitString x(n);
    x.set_word(0, v);
    return x;
}

} // namespace

TEST_CASE("dominance comparison")
{
    CHECK(emo::compare({82, 80}, {37, 30}) == emo::Dominance::Dominates);
    CHECK(emo::compare({37, 30}, {82, 80}) == emo::Dominance::DominatedBy);
    CHECK(emo::compare({81, 81}, {82, 80}) == emo::Dominance::Incomparable);
    CHECK(emo::compare({5, 5}, {5, 5}) == emo::Dominance::Equal);
    CHECK(emo::compare({5, 6}, {5, 5}) == emo::Dominance::Dominates);

    emo::Rng rng(1);
    for (int t = 0; t < 5000; ++t) {
        const Fitness a{rng.below(5), rng.below(5)};
        const Fitness b{rng.below(5), rng.below(5)};
        const bool ab = emo::compare(a, b) == emo::Dominance::Dominates;
        const bool ba = emo::compare(b, a) == emo::Dominance::DominatedBy;
        CHECK(ab == ba);
    }
}

TEST_CASE("rrrmo evaluation")
{
    CHECK(emo::rrrmo_eval(BitString::zeros(10), 10) == Fitness{10, 10});
    CHECK(emo::rrrmo_eval(BitString::parse("1110000000"), 10) == Fitness{37, 30});
    CHECK(emo::rrrmo_eval(BitString::parse("0111111110"), 10) == Fitness{81, 81});
    CHECK(emo::rrrmo_eval(BitString::parse("1011111110"), 10) == Fitness{0, 0});
    CHECK(emo::rrrmo_eval(BitString::parse("1111111111"), 10) == Fitness{0, 0});
    CHECK_THROWS_AS(emo::Rrrmo(12), std::invalid_argument);
    CHECK_THROWS_AS(emo::Rrrmo(0), std::invalid_argument);
}

TEST_CASE("rrrmo membership")
{
    auto f = emo::rrrmo_membership(BitString::parse("0111111110"), 10);
    CHECK(f.in_f);
    CHECK(f.in_g);
    CHECK_FALSE(f.in_fprime);

    f = emo::rrrmo_membership(BitString::parse("0111111000"), 10);
    CHECK(f.in_fprime);
    CHECK(f.in_g);
    CHECK_FALSE(f.in_f);

    f = emo::rrrmo_membership(BitString::parse("1011111110"), 10);
    CHECK_FALSE(f.in_g);
    CHECK_FALSE(f.in_f);
}

TEST_CASE("rrrmo membership matches the literal set forms")
{
    // F = 0^i 1^{4n/5} 0^{n/5-i}, F' = 0^i 1^{3n/5} 0^{2n/5-i}
    for (std::size_t n : {5, 10, 15}) {
        std::set<std::string> f_forms;
        std::set<std::string> fp_forms;
        for (std::size_t i = 0; i <= n / 5; ++i) {
            f_forms.insert(std::string(i, '0') + std::string(4 * n / 5, '1') + std::string(n / 5 - i, '0'));
        }
        for (std::size_t i = 0; i <= 2 * n / 5; ++i) {
            fp_forms.insert(std::string(i, '0') + std::string(3 * n / 5, '1') + std::string(2 * n / 5 - i, '0'));
        }
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
            const auto x = from_index(n, v);
            const auto s = x.to_string();
            const auto flags = emo::rrrmo_membership(x, n);
            REQUIRE(flags.in_f == f_forms.contains(s));
            REQUIRE(flags.in_fprime == fp_forms.contains(s));
            REQUIRE(flags.in_g == (5 * x.count_ones() <= 3 * n || flags.in_f));
        }
    }
}

TEST_CASE("rrrmo: points of G dominate points outside G and F (n=10)")
{
    constexpr std::size_t n = 10;
    std::vector<Fitness> inside;
    std::vector<Fitness> outside;
    for (std::uint64_t v = 0; v < (1U << n); ++v) {
        const auto x = from_index(n, v);
        (emo::rrrmo_membership(x, n).in_g ? inside : outside).push_back(emo::rrrmo_eval(x, n));
    }
    REQUIRE_FALSE(outside.empty());
    for (const auto& a : inside) {
        for (const auto& b : outside) {
            REQUIRE(emo::dominates(a, b));
        }
    }
}

TEST_CASE("rrrmo front")
{
    auto front = emo::rrrmo_front(5);
    REQUIRE(front.size() == 2);
    CHECK(front[0].x.to_string() == "11110");
    CHECK(front[0].fitness == Fitness{21, 20});
    CHECK(front[1].x.to_string() == "01111");
    CHECK(front[1].fitness == Fitness{20, 21});

    const emo::Rrrmo r10(10);
    CHECK(r10.front_fitness() == std::vector<Fitness>{{82, 80}, {81, 81}, {80, 82}});

    for (std::size_t n = 5; n <= 200; n += 5) {
        const auto fr = emo::rrrmo_front(n);
        REQUIRE(fr.size() == n / 5 + 1);
        std::set<Fitness> distinct;
        for (std::size_t i = 0; i < fr.size(); ++i) {
            const std::uint64_t base = 4 * n * n / 5;
            CHECK(fr[i].fitness == Fitness{base + n / 5 - i, base + i});
            CHECK(emo::rrrmo_eval(fr[i].x, n) == fr[i].fitness);
            distinct.insert(fr[i].fitness);
        }
        CHECK(distinct.size() == fr.size());
    }
}

TEST_CASE("rrrmo front equals exhaustive search")
{
    for (std::size_t n : {5, 10, 15}) {
        const emo::Problem p(emo::Rrrmo{n});
        const auto brute = emo::brute_force_pareto(p);
        auto closed = p.front_fitness();
        std::sort(closed.begin(), closed.end());
        CHECK(brute.fitness_vectors == closed);
        CHECK(brute.preimages.size() == n / 5 + 1);
    }
}

TEST_CASE("urrrmo subsets")
{
    auto flags = emo::urrrmo_subsets(BitString::parse("1010101011100000"), 16);
    CHECK(flags.left_in_u);
    CHECK(flags.right_in_c);
    flags = emo::urrrmo_subsets(BitString::parse("0000000010101010"), 16);
    CHECK(flags.right_in_t);
    CHECK_FALSE(flags.right_in_c);
}

TEST_CASE("urrrmo evaluation")
{
    CHECK(emo::urrrmo_eval(BitString::parse("1010101011100000"), 16) == Fitness{31, 41});
    CHECK(emo::urrrmo_eval(BitString::parse("1111111110101010"), 16) == Fitness{56, 48});
    CHECK(emo::urrrmo_eval(BitString::parse("0110000011011011"), 16) == Fitness{0, 0});
    CHECK(emo::urrrmo_eval(BitString::parse("1010101011011011"), 16) == Fitness{2, 8});
    CHECK_THROWS_AS(emo::Urrrmo(24), std::invalid_argument);
}

TEST_CASE("urrrmo subsets agree with the reference predicates; cases are exclusive (n=16)")
{
    constexpr std::size_t n = 16;
    const auto ref = emo::reference_subset_predicates(n);
    for (std::uint64_t v = 0; v < (1U << n); ++v) {
        const auto x = from_index(n, v);
        const auto b = emo::blocks(x);
        const auto flags = emo::urrrmo_subsets(x, n);
        REQUIRE(flags.left_in_u == ref.in_u(b.left));
        REQUIRE(flags.left_in_p == ref.in_p(b.left));
        REQUIRE(flags.right_in_c == ref.in_c(b.right));
        REQUIRE(flags.right_in_t == ref.in_t(b.right));
        const int cases = int(flags.left_in_u && !flags.right_in_c) + int(flags.right_in_c) + int(flags.in_w());
        REQUIRE(cases <= 1);
        REQUIRE_FALSE((flags.in_k() && flags.in_w()));
    }
}

TEST_CASE("urrrmo instance evaluation")
{
    emo::Rng rng(3);
    const std::size_t n = 32;
    for (int t = 0; t < 100; ++t) {
        const auto x = random_string(n, rng);
        CHECK(emo::urrrmo_instance_eval(x, emo::Permutation::identity(n), BitString(n)) == emo::urrrmo_eval(x, n));
    }

    // z = sigma(x) maps x onto 0^n
    const auto sigma = emo::hypermutation_hard_sigma(n);
    const auto x = random_string(n, rng);
    const auto z = emo::apply_permutation(x, sigma);
    CHECK(emo::urrrmo_instance_eval(x, sigma, z) == Fitness{3 * n, 2 * n});

    const emo::ProblemSpec spec{"urrrmo-sigma-z", "random", "random"};
    for (int t = 0; t < 10000; ++t) {
        const auto p = spec.make(16, rng.next_u64());
        const auto* u = p.urrrmo();
        REQUIRE(u != nullptr);
        const auto y = random_string(16, rng);
        // manual pipeline, bit by bit
        BitString moved(16);
        for (std::size_t i = 0; i < 16; ++i) {
            moved.set(i, y.get(u->sigma()[i]) != u->mask().get(i));
        }
        REQUIRE(p.evaluate(y) == emo::urrrmo_eval(moved, 16));
    }
}

TEST_CASE("urrrmo front")
{
    const auto f16 = emo::urrrmo_front(16, true);
    REQUIRE(f16.fitness_vectors.size() == 9);
    for (std::uint64_t k = 0; k <= 8; ++k) {
        CHECK(f16.fitness_vectors[k] == Fitness{48 + k, 56 - k});
    }
    CHECK(f16.preimage_count == 144);
    REQUIRE(f16.preimages.has_value());
    CHECK(f16.preimages->size() == 144);

    const auto f32 = emo::urrrmo_front(32, true);
    CHECK(f32.fitness_vectors.size() == 17);
    CHECK(f32.preimage_count == 22032);
    REQUIRE(f32.preimages.has_value());
    CHECK(f32.preimages->size() == 22032);
    std::set<std::string> distinct;
    for (const auto& x : *f32.preimages) {
        const auto flags = emo::urrrmo_subsets(x, 32);
        CHECK(flags.in_w());
        distinct.insert(x.to_string());
    }
    CHECK(distinct.size() == 22032);

    for (std::size_t n = 16; n <= 256; n += 16) {
        CHECK(emo::urrrmo_front(n).fitness_vectors.size() == n / 2 + 1);
    }
    CHECK_THROWS_AS((void)emo::urrrmo_front(64, true), emo::SizeLimitError);
}

TEST_CASE("urrrmo front equals exhaustive search at n=16")
{
    const emo::Problem p(emo::Urrrmo{16});
    const auto brute = emo::brute_force_pareto(p);
    CHECK(brute.fitness_vectors == p.front_fitness());
    CHECK(brute.preimages.size() == 144);
}

TEST_CASE("hypermutation-hard permutation")
{
    const auto sigma = emo::hypermutation_hard_sigma(16);
    CHECK(emo::apply_permutation(BitString::parse("1111111100000000"), sigma).to_string() == "1111000011110000");

    // labelled blocks: block b holds the pattern of b in binary
    BitString x(16);
    for (std::size_t b = 0; b < 8; ++b) {
        x.set(2 * b, (b & 2U) != 0);
        x.set(2 * b + 1, (b & 1U) != 0);
    }
    const auto y = emo::apply_permutation(x, sigma);
    const std::size_t order[8] = {0, 2, 4, 6, 1, 3, 5, 7};
    for (std::size_t b = 0; b < 8; ++b) {
        CHECK(y.get(2 * b) == x.get(2 * order[b]));
        CHECK(y.get(2 * b + 1) == x.get(2 * order[b] + 1));
    }

    const auto s64 = emo::hypermutation_hard_sigma(64);
    emo::Rng rng(9);
    const auto z = random_string(64, rng);
    CHECK(emo::apply_permutation(emo::apply_permutation(z, s64), s64.inverse()) == z);
    CHECK_FALSE(emo::apply_permutation(emo::apply_permutation(z, s64), s64) == z);
    CHECK_THROWS_AS((void)emo::hypermutation_hard_sigma(40), std::invalid_argument);
}

TEST_CASE("problem spec")
{
    const emo::ProblemSpec rr{"rrrmo"};
    CHECK(rr.length_divisor() == 5);
    CHECK(rr.make(10, 1).front_size() == 3);
    const emo::ProblemSpec hard{"urrrmo-sigma-z", "hypermut-hard", "zero"};
    const auto p = hard.make(32, 1);
    CHECK(p.urrrmo()->sigma() == emo::hypermutation_hard_sigma(32));
    CHECK_THROWS_AS((void)emo::ProblemSpec{"onemax"}.make(10, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)(emo::ProblemSpec{"urrrmo-sigma-z", "identity", "0101"}.make(16, 1)),
                    std::invalid_argument);
    // same seed, same random instance
    const emo::ProblemSpec rnd{"urrrmo-sigma-z", "random", "random"};
    CHECK(rnd.make(32, 7).urrrmo()->sigma() == rnd.make(32, 7).urrrmo()->sigma());
    CHECK(rnd.make(32, 7).urrrmo()->mask() == rnd.make(32, 7).urrrmo()->mask());
}
