#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "emo/bitstring.hpp"

namespace emo {

/// Bijection on positions. Externally 1-based (entry i holds sigma(i) in
/// 1..n); stored 0-based.
class Permutation {
public:
    Permutation() = default;

    static Permutation identity(std::size_t n);
    /// Throws std::invalid_argument unless the mapping is a bijection on 1..n.
    static Permutation from_one_based(std::span<const std::size_t> mapping);
    /// Comma separated 1-based mapping, e.g. "2,1,3".
    static Permutation parse(std::string_view text);

    [[nodiscard]] std::size_t size() const noexcept { return map_.size(); }
    /// 0-based source position of output position i.
    [[nodiscard]] std::size_t operator[](std::size_t i) const noexcept { return map_[i]; }
    [[nodiscard]] bool is_identity() const noexcept;
    [[nodiscard]] Permutation inverse() const;
    [[nodiscard]] std::vector<std::size_t> one_based() const;
    [[nodiscard]] std::string to_string() const;

    /// Output bit i equals input bit sigma(i).
    [[nodiscard]] BitString apply(const BitString& x) const;

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    explicit Permutation(std::vector<std::size_t> zero_based)
        : map_(std::move(zero_based))
    {
    }
    std::vector<std::size_t> map_;
};

/// Throws std::invalid_argument on a size mismatch.
[[nodiscard]] BitString apply_permutation(const BitString& x, const Permutation& sigma);

} // namespace emo
