#include "emo/permutation.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

namespace emo {

Permutation Permutation::identity(std::size_t n)
{
    std::vector<std::size_t> m(n);
    std::iota(m.begin(), m.end(), std::size_t{0});
    return Permutation(std::move(m));
}

Permutation Permutation::from_one_based(std::span<const std::size_t> mapping)
{
    const std::size_t n = mapping.size();
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> m(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t v = mapping[i];
        if (v < 1 || v > n) {
            throw std::invalid_argument("permutation entry " + std::to_string(v) + " at position "
                                        + std::to_string(i + 1) + " is outside 1.." + std::to_string(n));
        }
        if (seen[v - 1]) {
            throw std::invalid_argument("permutation is not a bijection: " + std::to_string(v) + " repeats");
        }
        seen[v - 1] = true;
        m[i] = v - 1;
    }
    return Permutation(std::move(m));
}

Permutation Permutation::parse(std::string_view text)
{
    std::vector<std::size_t> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = std::min(text.find(',', start), text.size());
        const auto token = text.substr(start, comma - start);
        std::size_t v = 0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
        if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty()) {
            throw std::invalid_argument("bad permutation entry '" + std::string(token) + "'");
        }
        values.push_back(v);
        start = comma + 1;
    }
    return from_one_based(values);
}

bool Permutation::is_identity() const noexcept
{
    for (std::size_t i = 0; i < map_.size(); ++i) {
        if (map_[i] != i) {
            return false;
        }
    }
    return true;
}

Permutation Permutation::inverse() const
{
    std::vector<std::size_t> inv(map_.size());
    for (std::size_t i = 0; i < map_.size(); ++i) {
        inv[map_[i]] = i;
    }
    return Permutation(std::move(inv));
}

std::vector<std::size_t> Permutation::one_based() const
{
    std::vector<std::size_t> out(map_);
    for (auto& v : out) {
        ++v;
    }
    return out;
}

std::string Permutation::to_string() const
{
    std::string s;
    for (std::size_t i = 0; i < map_.size(); ++i) {
        if (i != 0) {
            s += ',';
        }
        s += std::to_string(map_[i] + 1);
    }
    return s;
}

BitString Permutation::apply(const BitString& x) const
{
    BitString out(x.size());
    for (std::size_t i = 0; i < map_.size(); ++i) {
        if (x.get(map_[i])) {
            out.set(i, true);
        }
    }
    return out;
}

BitString apply_permutation(const BitString& x, const Permutation& sigma)
{
    if (x.size() != sigma.size()) {
        throw std::invalid_argument("permutation of size " + std::to_string(sigma.size())
                                    + " applied to a string of length " + std::to_string(x.size()));
    }
    return sigma.apply(x);
}

} // namespace emo
