#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/container/small_vector.hpp>

namespace emo {

/// Counting statistics of a bit string: number of ones and zeros plus the
/// lengths of the leading/trailing runs of ones and zeros.
struct BitStats {
    std::size_t ones = 0;
    std::size_t zeros = 0;
    std::size_t leading_ones = 0;
    std::size_t trailing_ones = 0;
    std::size_t leading_zeros = 0;
    std::size_t trailing_zeros = 0;

    friend bool operator==(const BitStats&, const BitStats&) = default;
};

/// Fixed-length binary genome packed into 64-bit words.
///
/// Position 0 internally is bit 1 in the usual 1-based notation; text
/// rendering prints position 0 first. Bits past the length in the last word
/// are kept zero so word-level comparisons and popcounts stay exact.
class BitString {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t kWordBits = 64;

    BitString() = default;
    explicit BitString(std::size_t n, bool value = false);

    /// Parses a '0'/'1' literal, index 1 first. Throws std::invalid_argument
    /// on any other character or an empty literal.
    static BitString parse(std::string_view text);
    static BitString zeros(std::size_t n) { return BitString(n, false); }
    static BitString ones(std::size_t n) { return BitString(n, true); }

    [[nodiscard]] std::size_t size() const noexcept { return size_; }
    [[nodiscard]] std::size_t word_count() const noexcept { return words_.size(); }

    [[nodiscard]] bool get(std::size_t i) const noexcept
    {
        return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
    }
    void set(std::size_t i, bool v) noexcept
    {
        const Word mask = Word{1} << (i % kWordBits);
        if (v) {
            words_[i / kWordBits] |= mask;
        } else {
            words_[i / kWordBits] &= ~mask;
        }
    }
    void flip(std::size_t i) noexcept { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }

    /// 1-based access in the circular sense: k resolves to ((k-1) mod n)+1,
    /// and k = 0 is identified with k = n.
    [[nodiscard]] bool at_circular(long long k) const;

    [[nodiscard]] Word word(std::size_t w) const noexcept { return words_[w]; }
    /// Sets a whole word; bits beyond the length are masked away.
    void set_word(std::size_t w, Word value) noexcept;
    /// Mask of the valid bits in word w.
    [[nodiscard]] Word word_mask(std::size_t w) const noexcept;

    /// Up to 64 bits starting at pos, bit pos in the least significant place.
    [[nodiscard]] Word extract(std::size_t pos, std::size_t len) const noexcept;

    [[nodiscard]] std::size_t count_ones() const noexcept;
    [[nodiscard]] std::size_t count_ones(std::size_t pos, std::size_t len) const noexcept;
    [[nodiscard]] std::size_t leading_ones(std::size_t pos, std::size_t len) const noexcept;
    [[nodiscard]] std::size_t leading_zeros(std::size_t pos, std::size_t len) const noexcept;
    [[nodiscard]] std::size_t trailing_ones(std::size_t pos, std::size_t len) const noexcept;
    [[nodiscard]] std::size_t trailing_zeros(std::size_t pos, std::size_t len) const noexcept;

    [[nodiscard]] std::size_t leading_ones() const noexcept { return leading_ones(0, size_); }
    [[nodiscard]] std::size_t leading_zeros() const noexcept { return leading_zeros(0, size_); }
    [[nodiscard]] std::size_t trailing_ones() const noexcept { return trailing_ones(0, size_); }
    [[nodiscard]] std::size_t trailing_zeros() const noexcept { return trailing_zeros(0, size_); }

    [[nodiscard]] BitString substring(std::size_t pos, std::size_t len) const;
    [[nodiscard]] BitString complement() const;

    [[nodiscard]] std::string to_string() const;
    [[nodiscard]] std::size_t hash() const noexcept;

    friend bool operator==(const BitString& a, const BitString& b) noexcept
    {
        return a.size_ == b.size_ && a.words_ == b.words_;
    }

private:
    std::size_t size_ = 0;
    boost::container::small_vector<Word, 2> words_;
};

[[nodiscard]] BitStats count_statistics(const BitString& x) noexcept;

/// Number of differing positions. Throws std::invalid_argument on length mismatch.
[[nodiscard]] std::size_t hamming(const BitString& x, const BitString& y);

/// Bitwise exclusive-or. Throws std::invalid_argument on length mismatch.
[[nodiscard]] BitString bit_xor(const BitString& x, const BitString& z);

[[nodiscard]] BitString concat(const BitString& a, const BitString& b);

/// Half/eighth partition used by the uniform-crossover royal road:
/// x = (L, R), L = (L1..L4), R = (R1..R4).
struct Blocks {
    BitString left;
    BitString right;
    std::array<BitString, 4> left_blocks;
    std::array<BitString, 4> right_blocks;
};

/// Throws std::invalid_argument unless the length is a positive multiple of 16.
[[nodiscard]] Blocks blocks(const BitString& x);

[[nodiscard]] BitString join(const Blocks& b);

struct BitStringHash {
    std::size_t operator()(const BitString& x) const noexcept { return x.hash(); }
};

} // namespace emo
