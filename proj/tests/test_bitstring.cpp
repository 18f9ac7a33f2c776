#include <doctest.h>

#include <numeric>
#include <stdexcept>
#include <vector>

#include "emo/bitstring.hpp"
#include "emo/permutation.hpp"
#include "emo/rng.hpp"

using emo::BitString;
using emo::Permutation;

namespace {

BitString random_string(std::size_t n, emo::Rng& rng)
{
    BitString x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x.set(i, rng.coin());
    }
    return x;
}

Permutation random_permutation(std::size_t n, emo::Rng& rng)
{
    std::vector<std::size_t> m(n);
    std::iota(m.begin(), m.end(), std::size_t{1});
    for (std::size_t i = n; i > 1; --i) {
        std::swap(m[i - 1], m[rng.below(i)]);
    }
    return Permutation::from_one_based(m);
}

// per-character reference for the run statistics
emo::BitStats naive_stats(const std::string& s)
{
    emo::BitStats st;
    for (char c : s) {
        (c == '1' ? st.ones : st.zeros)++;
    }
    auto run = [&](char c, bool from_front) {
        std::size_t k = 0;
        if (from_front) {
            while (k < s.size() && s[k] == c) {
                ++k;
            }
        } else {
            while (k < s.size() && s[s.size() - 1 - k] == c) {
                ++k;
            }
        }
        return k;
    };
    st.leading_ones = run('1', true);
    st.leading_zeros = run('0', true);
    st.trailing_ones = run('1', false);
    st.trailing_zeros = run('0', false);
    return st;
}

} // namespace

TEST_CASE("count statistics of 111001011011")
{
    const auto st = emo::count_statistics(BitString::parse("111001011011"));
    CHECK(st.ones == 8);
    CHECK(st.zeros == 4);
    CHECK(st.leading_ones == 3);
    CHECK(st.trailing_ones == 2);
    CHECK(st.leading_zeros == 0);
    CHECK(st.trailing_zeros == 0);
}

TEST_CASE("count statistics of constant strings")
{
    for (std::size_t n : {1, 7, 64, 65, 130}) {
        const auto z = emo::count_statistics(BitString::zeros(n));
        CHECK(z.ones == 0);
        CHECK(z.zeros == n);
        CHECK(z.leading_zeros == n);
        CHECK(z.trailing_zeros == n);
        CHECK(z.leading_ones == 0);
        CHECK(z.trailing_ones == 0);

        const auto o = emo::count_statistics(BitString::ones(n));
        CHECK(o.ones == n);
        CHECK(o.leading_ones == n);
        CHECK(o.trailing_ones == n);
        CHECK(o.leading_zeros == 0);
        CHECK(o.trailing_zeros == 0);
    }
}

TEST_CASE("statistics agree with a per-character count across word boundaries")
{
    emo::Rng rng(5);
    for (int t = 0; t < 2000; ++t) {
        const std::size_t n = 1 + rng.below(200);
        BitString x = random_string(n, rng);
        // long runs at the ends are the interesting part
        const auto head = rng.below(n + 1);
        const bool head_bit = rng.coin();
        for (std::size_t i = 0; i < head; ++i) {
            x.set(i, head_bit);
        }
        const auto st = emo::count_statistics(x);
        CHECK(st == naive_stats(x.to_string()));
        CHECK(st.ones + st.zeros == n);
        CHECK(st.leading_ones + st.trailing_zeros <= n);
        if (st.leading_ones == n) {
            CHECK(x == BitString::ones(n));
        }
    }
}

TEST_CASE("range statistics")
{
    const BitString x = BitString::parse("0011100110");
    CHECK(x.count_ones(2, 5) == 3);
    CHECK(x.leading_ones(2, 5) == 3);
    CHECK(x.trailing_zeros(2, 5) == 2);
    CHECK(x.leading_zeros(0, 4) == 2);
    CHECK(x.trailing_ones(0, 4) == 2);
    CHECK(x.substring(2, 5).to_string() == "11100");
}

TEST_CASE("parse and render")
{
    CHECK(BitString::parse("1010").to_string() == "1010");
    CHECK(BitString::parse("1000").get(0));
    CHECK_FALSE(BitString::parse("1000").get(3));
    CHECK_THROWS_AS((void)BitString::parse("10a1"), std::invalid_argument);
    CHECK_THROWS_AS((void)BitString::parse(""), std::invalid_argument);
    emo::Rng rng(1);
    for (int t = 0; t < 200; ++t) {
        const auto x = random_string(1 + rng.below(300), rng);
        CHECK(BitString::parse(x.to_string()) == x);
    }
}

TEST_CASE("circular indexing")
{
    const BitString x = BitString::parse("1000");
    CHECK(x.at_circular(1));
    CHECK(x.at_circular(5));
    CHECK(x.at_circular(0) == x.at_circular(4));
    CHECK_FALSE(x.at_circular(2));
    CHECK(x.at_circular(-3));
    CHECK(x.at_circular(9));
}

TEST_CASE("hamming distance")
{
    CHECK(emo::hamming(BitString::parse("1111"), BitString::parse("1111")) == 0);
    CHECK(emo::hamming(BitString::parse("1111"), BitString::parse("0000")) == 4);
    CHECK(emo::hamming(BitString::parse("1100"), BitString::parse("1010")) == 2);
    CHECK_THROWS_AS((void)emo::hamming(BitString(3), BitString(4)), std::invalid_argument);

    emo::Rng rng(2);
    for (int t = 0; t < 1000; ++t) {
        const std::size_t n = 1 + rng.below(150);
        const auto a = random_string(n, rng);
        const auto b = random_string(n, rng);
        const auto c = random_string(n, rng);
        CHECK(emo::hamming(a, b) == emo::hamming(b, a));
        CHECK(emo::hamming(a, c) <= emo::hamming(a, b) + emo::hamming(b, c));
        CHECK((emo::hamming(a, b) == 0) == (a == b));
    }
}

TEST_CASE("xor")
{
    CHECK(emo::bit_xor(BitString::parse("1100"), BitString::parse("0000")).to_string() == "1100");
    CHECK(emo::bit_xor(BitString::parse("1100"), BitString::parse("1100")).to_string() == "0000");
    CHECK(emo::bit_xor(BitString::parse("1100"), BitString::parse("1010")).to_string() == "0110");
    CHECK_THROWS_AS((void)emo::bit_xor(BitString(3), BitString(4)), std::invalid_argument);

    emo::Rng rng(3);
    for (int t = 0; t < 1000; ++t) {
        const std::size_t n = 1 + rng.below(150);
        const auto a = random_string(n, rng);
        const auto b = random_string(n, rng);
        const auto c = random_string(n, rng);
        CHECK(emo::bit_xor(a, b) == emo::bit_xor(b, a));
        CHECK(emo::bit_xor(emo::bit_xor(a, b), c) == emo::bit_xor(a, emo::bit_xor(b, c)));
        CHECK(emo::bit_xor(a, a) == BitString::zeros(n));
    }
}

TEST_CASE("complement keeps padding clear")
{
    const auto x = BitString::parse("10110").complement();
    CHECK(x.to_string() == "01001");
    CHECK(x.count_ones() == 2);
    CHECK(BitString::zeros(70).complement() == BitString::ones(70));
}

TEST_CASE("apply permutation")
{
    emo::Rng rng(4);
    const auto x = random_string(37, rng);
    CHECK(emo::apply_permutation(x, Permutation::identity(37)) == x);

    const auto reversal = Permutation::parse("4,3,2,1");
    CHECK(emo::apply_permutation(BitString::parse("1010"), reversal).to_string() == "0101");
    CHECK(emo::apply_permutation(BitString::parse("100"), Permutation::parse("2,1,3")).to_string() == "010");

    CHECK_THROWS_AS((void)Permutation::parse("1,1,3"), std::invalid_argument);
    CHECK_THROWS_AS((void)Permutation::parse("0,1,2"), std::invalid_argument);
    CHECK_THROWS_AS((void)Permutation::parse("1,2,4"), std::invalid_argument);
    CHECK_THROWS_AS((void)emo::apply_permutation(BitString(3), Permutation::identity(4)), std::invalid_argument);

    for (int t = 0; t < 500; ++t) {
        const std::size_t n = 1 + rng.below(100);
        const auto s = random_permutation(n, rng);
        const auto y = random_string(n, rng);
        CHECK(emo::apply_permutation(emo::apply_permutation(y, s), s.inverse()) == y);
        CHECK(Permutation::parse(s.to_string()) == s);
    }
}

TEST_CASE("blocks")
{
    auto b = emo::blocks(BitString::parse("1111111100000000"));
    CHECK(b.left.to_string() == "11111111");
    CHECK(b.right.to_string() == "00000000");
    for (int i = 0; i < 4; ++i) {
        CHECK(b.left_blocks[i].to_string() == "11");
        CHECK(b.right_blocks[i].to_string() == "00");
    }

    b = emo::blocks(BitString::parse("1010101011100000"));
    const char* expect[8] = {"10", "10", "10", "10", "11", "10", "00", "00"};
    for (int i = 0; i < 4; ++i) {
        CHECK(b.left_blocks[i].to_string() == expect[i]);
        CHECK(b.right_blocks[i].to_string() == expect[4 + i]);
    }

    CHECK_THROWS_AS((void)emo::blocks(BitString(20)), std::invalid_argument);

    emo::Rng rng(6);
    for (int t = 0; t < 10000; ++t) {
        const auto x = random_string(16, rng);
        CHECK(emo::join(emo::blocks(x)) == x);
    }
    for (std::size_t n : {32, 64, 128, 144}) {
        const auto x = random_string(n, rng);
        CHECK(emo::join(emo::blocks(x)) == x);
    }
}

TEST_CASE("concat and extract")
{
    const auto x = emo::concat(BitString::parse("110"), BitString::parse("01"));
    CHECK(x.to_string() == "11001");
    emo::Rng rng(8);
    const auto y = random_string(150, rng);
    for (std::size_t pos = 0; pos + 64 <= 150; pos += 7) {
        const auto w = y.extract(pos, 64);
        for (std::size_t i = 0; i < 64; ++i) {
            CHECK(((w >> i) & 1U) == static_cast<unsigned>(y.get(pos + i)));
        }
    }
}
