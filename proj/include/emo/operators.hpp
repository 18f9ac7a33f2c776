#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "emo/bitstring.hpp"
#include "emo/rng.hpp"

namespace emo {

/// Distribution of the Hamming radius of a unary unbiased operator,
/// supported on 0..n.
class RadiusDistribution {
public:
    /// Weights must be non-negative and sum to 1 within 1e-12.
    /// Throws std::invalid_argument otherwise.
    static RadiusDistribution from_weights(std::vector<double> weights);
    static RadiusDistribution point(std::size_t n, std::size_t k);
    static RadiusDistribution uniform(std::size_t n);
    /// Binomial(n, 1/n): the radius law of standard bit mutation.
    static RadiusDistribution binomial_one_over_n(std::size_t n);
    /// "point:<k>" (k an integer or "n/<d>"), "uniform" or "binomial-1-over-n".
    static RadiusDistribution preset(std::string_view name, std::size_t n);

    [[nodiscard]] std::size_t n() const noexcept { return weights_.size() - 1; }
    [[nodiscard]] double weight(std::size_t r) const noexcept { return weights_[r]; }
    [[nodiscard]] std::size_t sample(Rng& rng) const;

private:
    explicit RadiusDistribution(std::vector<double> weights);
    std::vector<double> weights_;
    std::vector<double> cdf_;
};

/// Uniform point on the Hamming sphere of radius r around x.
[[nodiscard]] BitString flip_uniform_subset(const BitString& x, std::size_t r, Rng& rng);

/// Each bit flipped independently with probability 1/n.
[[nodiscard]] BitString standard_bit_mutation(const BitString& x, Rng& rng);
[[nodiscard]] BitString unary_unbiased_mutation(const BitString& x, const RadiusDistribution& radius, Rng& rng);
/// Somatic contiguous hypermutation: window start c ~ U{1..n}, length
/// l ~ U{0..n}; bits of the circular window flip with probability `rate`.
/// Throws std::invalid_argument unless 0 < rate <= 1.
[[nodiscard]] BitString hypermutation(const BitString& x, double rate, Rng& rng);

using Offspring = std::pair<BitString, BitString>;

/// z takes x on positions 1..c and y after; z-bar the reverse.
[[nodiscard]] Offspring one_point_crossover_at(const BitString& x, const BitString& y, std::size_t c);
[[nodiscard]] Offspring one_point_crossover(const BitString& x, const BitString& y, Rng& rng);
[[nodiscard]] Offspring uniform_crossover(const BitString& x, const BitString& y, Rng& rng);
[[nodiscard]] BitString pick_one_offspring(Offspring pair, Rng& rng);

/// A mutation operator bound to a string length.
class MutationOperator {
public:
    enum class Kind { Standard, Unbiased, Hyper };

    /// "std" | "unbiased:<preset>" | "hyper:<r>". Throws std::invalid_argument.
    static MutationOperator parse(std::string_view spec, std::size_t n);
    static MutationOperator standard(std::size_t n);
    static MutationOperator unbiased(RadiusDistribution radius);
    static MutationOperator hyper(double rate);

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] double rate() const noexcept { return rate_; }
    [[nodiscard]] BitString apply(const BitString& x, Rng& rng) const;

private:
    MutationOperator(Kind kind, std::optional<RadiusDistribution> radius, double rate);
    Kind kind_;
    std::optional<RadiusDistribution> radius_; // unset for hypermutation
    double rate_;
};

enum class CrossoverKind { None, OnePoint, Uniform };

/// "none" | "onepoint" | "uniform". Throws std::invalid_argument.
[[nodiscard]] CrossoverKind parse_crossover(std::string_view spec);
[[nodiscard]] std::string to_string(CrossoverKind kind);

/// Two-offspring crossover; `None` returns the parents unchanged.
[[nodiscard]] Offspring crossover(CrossoverKind kind, const BitString& x, const BitString& y, Rng& rng);

} // namespace emo
