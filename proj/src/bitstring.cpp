#include "emo/bitstring.hpp"

#include <algorithm>
#include <stdexcept>

namespace emo {

namespace {

constexpr std::size_t words_for(std::size_t n) { return (n + BitString::kWordBits - 1) / BitString::kWordBits; }

constexpr BitString::Word low_mask(std::size_t len)
{
    return len >= BitString::kWordBits ? ~BitString::Word{0} : (BitString::Word{1} << len) - 1;
}

void require_same_length(const BitString& x, const BitString& y, const char* what)
{
    if (x.size() != y.size()) {
        throw std::invalid_argument(std::string(what) + ": length mismatch (" + std::to_string(x.size()) + " vs "
                                    + std::to_string(y.size()) + ")");
    }
}

} // namespace

BitString::BitString(std::size_t n, bool value)
    : size_(n)
    , words_(words_for(n), value ? ~Word{0} : Word{0})
{
    if (value && !words_.empty()) {
        words_.back() &= word_mask(words_.size() - 1);
    }
}

BitString BitString::parse(std::string_view text)
{
    if (text.empty()) {
        throw std::invalid_argument("bit literal must not be empty");
    }
    BitString out(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c != '0' && c != '1') {
            throw std::invalid_argument("bit literal contains '" + std::string(1, c) + "' at position "
                                        + std::to_string(i + 1));
        }
        if (c == '1') {
            out.set(i, true);
        }
    }
    return out;
}

bool BitString::at_circular(long long k) const
{
    if (size_ == 0) {
        throw std::out_of_range("circular access on an empty bit string");
    }
    const auto n = static_cast<long long>(size_);
    long long r = (k - 1) % n;
    if (r < 0) {
        r += n;
    }
    return get(static_cast<std::size_t>(r));
}

BitString::Word BitString::word_mask(std::size_t w) const noexcept
{
    const std::size_t used = size_ - w * kWordBits;
    return low_mask(used);
}

void BitString::set_word(std::size_t w, Word value) noexcept
{
    words_[w] = value & word_mask(w);
}

BitString::Word BitString::extract(std::size_t pos, std::size_t len) const noexcept
{
    if (len == 0) {
        return 0;
    }
    const std::size_t idx = pos / kWordBits;
    const std::size_t off = pos % kWordBits;
    Word v = words_[idx] >> off;
    if (off != 0 && off + len > kWordBits) {
        v |= words_[idx + 1] << (kWordBits - off);
    }
    return v & low_mask(len);
}

std::size_t BitString::count_ones() const noexcept
{
    std::size_t c = 0;
    for (const Word w : words_) {
        c += static_cast<std::size_t>(std::popcount(w));
    }
    return c;
}

std::size_t BitString::count_ones(std::size_t pos, std::size_t len) const noexcept
{
    std::size_t c = 0;
    while (len > 0) {
        const std::size_t k = std::min(len, kWordBits);
        c += static_cast<std::size_t>(std::popcount(extract(pos, k)));
        pos += k;
        len -= k;
    }
    return c;
}

std::size_t BitString::leading_ones(std::size_t pos, std::size_t len) const noexcept
{
    std::size_t run = 0;
    while (len > 0) {
        const std::size_t k = std::min(len, kWordBits);
        const auto r = std::min<std::size_t>(static_cast<std::size_t>(std::countr_one(extract(pos, k))), k);
        run += r;
        if (r < k) {
            break;
        }
        pos += k;
        len -= k;
    }
    return run;
}

std::size_t BitString::leading_zeros(std::size_t pos, std::size_t len) const noexcept
{
    std::size_t run = 0;
    while (len > 0) {
        const std::size_t k = std::min(len, kWordBits);
        const auto r = std::min<std::size_t>(static_cast<std::size_t>(std::countr_zero(extract(pos, k))), k);
        run += r;
        if (r < k) {
            break;
        }
        pos += k;
        len -= k;
    }
    return run;
}

std::size_t BitString::trailing_ones(std::size_t pos, std::size_t len) const noexcept
{
    std::size_t run = 0;
    std::size_t end = pos + len;
    while (len > 0) {
        const std::size_t k = std::min(len, kWordBits);
        // the chunk's last bit lands in the most significant position
        const Word w = extract(end - k, k) << (kWordBits - k);
        const auto r = std::min<std::size_t>(static_cast<std::size_t>(std::countl_one(w)), k);
        run += r;
        if (r < k) {
            break;
        }
        end -= k;
        len -= k;
    }
    return run;
}

std::size_t BitString::trailing_zeros(std::size_t pos, std::size_t len) const noexcept
{
    std::size_t run = 0;
    std::size_t end = pos + len;
    while (len > 0) {
        const std::size_t k = std::min(len, kWordBits);
        const Word w = extract(end - k, k) << (kWordBits - k);
        const auto r = std::min<std::size_t>(static_cast<std::size_t>(std::countl_zero(w)), k);
        run += r;
        if (r < k) {
            break;
        }
        end -= k;
        len -= k;
    }
    return run;
}

BitString BitString::substring(std::size_t pos, std::size_t len) const
{
    if (pos + len > size_) {
        throw std::out_of_range("substring [" + std::to_string(pos) + ", " + std::to_string(pos + len)
                                + ") exceeds length " + std::to_string(size_));
    }
    BitString out(len);
    for (std::size_t w = 0; w < out.word_count(); ++w) {
        const std::size_t k = std::min(kWordBits, len - w * kWordBits);
        out.words_[w] = extract(pos + w * kWordBits, k);
    }
    return out;
}

BitString BitString::complement() const
{
    BitString out(*this);
    for (std::size_t w = 0; w < out.words_.size(); ++w) {
        out.words_[w] = ~out.words_[w] & out.word_mask(w);
    }
    return out;
}

std::string BitString::to_string() const
{
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i) {
        if (get(i)) {
            s[i] = '1';
        }
    }
    return s;
}

std::size_t BitString::hash() const noexcept
{
    // FNV-1a over the words
    std::uint64_t h = 0xcbf29ce484222325ULL ^ size_;
    for (const Word w : words_) {
        h ^= w;
        h *= 0x100000001b3ULL;
        h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
}

BitStats count_statistics(const BitString& x) noexcept
{
    BitStats s;
    s.ones = x.count_ones();
    s.zeros = x.size() - s.ones;
    s.leading_ones = x.leading_ones();
    s.trailing_ones = x.trailing_ones();
    s.leading_zeros = x.leading_zeros();
    s.trailing_zeros = x.trailing_zeros();
    return s;
}

std::size_t hamming(const BitString& x, const BitString& y)
{
    require_same_length(x, y, "hamming");
    std::size_t d = 0;
    for (std::size_t w = 0; w < x.word_count(); ++w) {
        d += static_cast<std::size_t>(std::popcount(x.word(w) ^ y.word(w)));
    }
    return d;
}

BitString bit_xor(const BitString& x, const BitString& z)
{
    require_same_length(x, z, "xor");
    BitString out(x.size());
    for (std::size_t w = 0; w < x.word_count(); ++w) {
        out.set_word(w, x.word(w) ^ z.word(w));
    }
    return out;
}

BitString concat(const BitString& a, const BitString& b)
{
    BitString out(a.size() + b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out.set(i, a.get(i));
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
        out.set(a.size() + i, b.get(i));
    }
    return out;
}

Blocks blocks(const BitString& x)
{
    const std::size_t n = x.size();
    if (n == 0 || n % 16 != 0) {
        throw std::invalid_argument("block partition needs a length divisible by 16, got " + std::to_string(n));
    }
    const std::size_t half = n / 2;
    const std::size_t eighth = n / 8;
    Blocks b{x.substring(0, half), x.substring(half, half), {}, {}};
    for (std::size_t i = 0; i < 4; ++i) {
        b.left_blocks[i] = x.substring(i * eighth, eighth);
        b.right_blocks[i] = x.substring(half + i * eighth, eighth);
    }
    return b;
}

BitString join(const Blocks& b)
{
    BitString out;
    bool first = true;
    for (const auto* part : {&b.left_blocks, &b.right_blocks}) {
        for (const auto& blk : *part) {
            out = first ? blk : concat(out, blk);
            first = false;
        }
    }
    return out;
}

} // namespace emo
