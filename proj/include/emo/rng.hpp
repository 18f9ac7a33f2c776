#pragma once

#include <cstdint>
#include <random>

namespace emo {

/// SplitMix64 finalizer; used to derive independent seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Deterministic random stream owned by a single caller.
///
/// Built on std::mt19937_64, whose output sequence is fixed by the standard.
/// The derived distributions are written out here rather than taken from
/// <random>, whose algorithms are implementation-defined, so that a
/// (seed, call sequence) pair reproduces across platforms.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed)
        : engine_(seed)
    {
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }
    result_type operator()() { return engine_(); }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, bound); bound must be positive. Lemire's multiply-shift
    /// with rejection, so the result is exactly uniform.
    std::uint64_t below(std::uint64_t bound)
    {
        __extension__ using u128 = unsigned __int128;
        std::uint64_t x = engine_();
        u128 m = static_cast<u128>(x) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                x = engine_();
                m = static_cast<u128>(x) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    /// Uniform on the closed integer range [lo, hi].
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool coin() { return (engine_() >> 63) != 0; }

    bool bernoulli(double p) { return uniform01() < p; }

private:
    std::mt19937_64 engine_;
};

} // namespace emo
