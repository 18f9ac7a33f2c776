#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "emo/bitstring.hpp"
#include "emo/permutation.hpp"

namespace emo {

/// Bi-objective value, both components maximised.
struct Fitness {
    std::uint64_t f1 = 0;
    std::uint64_t f2 = 0;

    friend bool operator==(const Fitness&, const Fitness&) = default;
    friend auto operator<=>(const Fitness&, const Fitness&) = default;
};

std::string to_string(const Fitness& f);

enum class Dominance { Dominates, DominatedBy, Equal, Incomparable };

[[nodiscard]] constexpr Dominance compare(const Fitness& a, const Fitness& b) noexcept
{
    const bool ge = a.f1 >= b.f1 && a.f2 >= b.f2;
    const bool le = a.f1 <= b.f1 && a.f2 <= b.f2;
    if (ge && le) {
        return Dominance::Equal;
    }
    if (ge) {
        return Dominance::Dominates;
    }
    if (le) {
        return Dominance::DominatedBy;
    }
    return Dominance::Incomparable;
}

[[nodiscard]] constexpr bool dominates(const Fitness& a, const Fitness& b) noexcept
{
    return compare(a, b) == Dominance::Dominates;
}

[[nodiscard]] constexpr bool weakly_dominates(const Fitness& a, const Fitness& b) noexcept
{
    return a.f1 >= b.f1 && a.f2 >= b.f2;
}

// ---------------------------------------------------------------------------
// Royal road for one-point crossover

struct RrrmoFlags {
    bool in_g = false;
    bool in_f = false;
    bool in_fprime = false;
};

struct FrontPoint {
    BitString x;
    Fitness fitness;
};

/// Royal road for one-point crossover. The length must be a positive multiple of 5.
///
/// G = {|x|_1 <= 3n/5} u F with F = {|x|_1 = 4n/5, LZ+TZ = n/5}; points of G
/// score (n|x|_1 + TZ, n|x|_1 + LZ), everything else (0, 0).
class Rrrmo {
public:
    explicit Rrrmo(std::size_t n);

    [[nodiscard]] std::size_t n() const noexcept { return n_; }
    [[nodiscard]] Fitness evaluate(const BitString& x) const;
    [[nodiscard]] RrrmoFlags membership(const BitString& x) const;

    /// F in order of increasing leading zeros: 0^i 1^{4n/5} 0^{n/5-i}.
    [[nodiscard]] std::vector<FrontPoint> front() const;
    [[nodiscard]] std::vector<Fitness> front_fitness() const;
    /// Position of f in front_fitness(), if it is a Pareto-optimal vector.
    [[nodiscard]] std::optional<std::size_t> front_index(const Fitness& f) const noexcept;

private:
    std::size_t n_;
};

[[nodiscard]] Fitness rrrmo_eval(const BitString& x, std::size_t n);
[[nodiscard]] RrrmoFlags rrrmo_membership(const BitString& x, std::size_t n);
[[nodiscard]] std::vector<FrontPoint> rrrmo_front(std::size_t n);

// ---------------------------------------------------------------------------
// Royal road for uniform crossover

struct UrrrmoFlags {
    bool left_in_u = false;
    bool left_in_p = false;
    bool right_in_c = false;
    bool right_in_t = false;

    [[nodiscard]] bool in_k() const noexcept { return left_in_u || right_in_c; }
    [[nodiscard]] bool in_w() const noexcept { return left_in_p && right_in_t; }
};

struct UrrrmoFront {
    std::vector<Fitness> fitness_vectors;
    std::uint64_t preimage_count = 0;
    std::optional<std::vector<BitString>> preimages;
};

/// Largest Pareto set enumerate_front() will materialise.
inline constexpr std::uint64_t kMaxEnumeratedPreimages = 1'000'000;

/// The royal road for uniform crossover, optionally composed with a
/// position permutation and an xor mask: x -> uRRRMO(sigma(x) xor z).
/// The length must be a positive multiple of 16.
class Urrrmo {
public:
    explicit Urrrmo(std::size_t n);
    Urrrmo(std::size_t n, Permutation sigma, BitString z);

    [[nodiscard]] std::size_t n() const noexcept { return n_; }
    [[nodiscard]] const Permutation& sigma() const noexcept { return sigma_; }
    [[nodiscard]] const BitString& mask() const noexcept { return z_; }

    /// sigma(x) xor z
    [[nodiscard]] BitString transform(const BitString& x) const;
    [[nodiscard]] Fitness evaluate(const BitString& x) const;
    /// Subset flags of the transformed string.
    [[nodiscard]] UrrrmoFlags subsets(const BitString& x) const;

    [[nodiscard]] std::vector<Fitness> front_fitness() const;
    [[nodiscard]] std::optional<std::size_t> front_index(const Fitness& f) const noexcept;

private:
    std::size_t n_;
    Permutation sigma_;
    BitString z_;
    bool identity_sigma_ = true;
    bool zero_mask_ = true;
};

/// Flags of the untransformed function on x.
[[nodiscard]] UrrrmoFlags urrrmo_subsets(const BitString& x, std::size_t n);
[[nodiscard]] Fitness urrrmo_eval(const BitString& x, std::size_t n);
[[nodiscard]] Fitness urrrmo_instance_eval(const BitString& x, const Permutation& sigma, const BitString& z);
/// Throws SizeLimitError when enumeration is requested above kMaxEnumeratedPreimages.
[[nodiscard]] UrrrmoFront urrrmo_front(std::size_t n, bool enumerate = false);

/// Permutation whose image of x has block order (L1, L3, R1, R3, L2, L4, R2, R4).
[[nodiscard]] Permutation hypermutation_hard_sigma(std::size_t n);

// ---------------------------------------------------------------------------

/// An immutable benchmark instance with its closed-form Pareto front.
class Problem {
public:
    explicit Problem(Rrrmo p);
    explicit Problem(Urrrmo p);

    [[nodiscard]] std::size_t n() const noexcept;
    [[nodiscard]] Fitness evaluate(const BitString& x) const;
    [[nodiscard]] const std::vector<Fitness>& front_fitness() const noexcept { return front_; }
    [[nodiscard]] std::size_t front_size() const noexcept { return front_.size(); }
    [[nodiscard]] std::optional<std::size_t> front_index(const Fitness& f) const noexcept;
    [[nodiscard]] bool is_pareto_fitness(const Fitness& f) const noexcept { return front_index(f).has_value(); }

    [[nodiscard]] const Rrrmo* rrrmo() const noexcept { return std::get_if<Rrrmo>(&impl_); }
    [[nodiscard]] const Urrrmo* urrrmo() const noexcept { return std::get_if<Urrrmo>(&impl_); }
    [[nodiscard]] std::string name() const;

private:
    std::variant<Rrrmo, Urrrmo> impl_;
    std::vector<Fitness> front_;
};

/// Problem selection as given on the command line.
///
/// kind: "rrrmo" | "urrrmo" | "urrrmo-sigma-z"; sigma: "identity" |
/// "hypermut-hard" | "random" | comma-separated 1-based mapping; z: bit
/// literal | "random" | "zero".
struct ProblemSpec {
    std::string kind = "rrrmo";
    std::string sigma = "identity";
    std::string z = "zero";

    /// Throws std::invalid_argument on an unknown kind or malformed sigma/z.
    /// Random sigma/z are drawn from `seed`.
    [[nodiscard]] Problem make(std::size_t n, std::uint64_t seed) const;
    /// Divisibility requirement of the selected kind (5 or 16).
    [[nodiscard]] std::size_t length_divisor() const;
};

} // namespace emo
