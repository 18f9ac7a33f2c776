#include "emo/objectives.hpp"

#include <cassert>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "emo/errors.hpp"
#include "emo/rng.hpp"

namespace emo {

std::string to_string(const Fitness& f)
{
    return "(" + std::to_string(f.f1) + "," + std::to_string(f.f2) + ")";
}

// ---------------------------------------------------------------------------

Rrrmo::Rrrmo(std::size_t n)
    : n_(n)
{
    if (n == 0 || n % 5 != 0) {
        throw std::invalid_argument("RRRMO needs a length divisible by 5, got " + std::to_string(n));
    }
}

Fitness Rrrmo::evaluate(const BitString& x) const
{
    const std::size_t ones = x.count_ones();
    const std::size_t lz = x.leading_zeros();
    const std::size_t tz = x.trailing_zeros();
    const bool in_g = 5 * ones <= 3 * n_ || (5 * ones == 4 * n_ && 5 * (lz + tz) == n_);
    if (!in_g) {
        return {};
    }
    return {n_ * ones + tz, n_ * ones + lz};
}

RrrmoFlags Rrrmo::membership(const BitString& x) const
{
    const std::size_t ones = x.count_ones();
    const std::size_t gap = x.leading_zeros() + x.trailing_zeros();
    RrrmoFlags flags;
    flags.in_f = 5 * ones == 4 * n_ && 5 * gap == n_;
    flags.in_fprime = 5 * ones == 3 * n_ && 5 * gap == 2 * n_;
    flags.in_g = 5 * ones <= 3 * n_ || flags.in_f;
    return flags;
}

std::vector<FrontPoint> Rrrmo::front() const
{
    const std::size_t block = 4 * n_ / 5;
    const std::size_t slack = n_ / 5;
    std::vector<FrontPoint> out;
    out.reserve(slack + 1);
    for (std::size_t i = 0; i <= slack; ++i) {
        BitString x(n_);
        for (std::size_t j = 0; j < block; ++j) {
            x.set(i + j, true);
        }
        out.push_back({x, evaluate(x)});
    }
    return out;
}

std::vector<Fitness> Rrrmo::front_fitness() const
{
    const std::uint64_t base = 4 * n_ * n_ / 5;
    const std::uint64_t slack = n_ / 5;
    std::vector<Fitness> out;
    out.reserve(slack + 1);
    for (std::uint64_t i = 0; i <= slack; ++i) {
        out.push_back({base + slack - i, base + i});
    }
    return out;
}

std::optional<std::size_t> Rrrmo::front_index(const Fitness& f) const noexcept
{
    const std::uint64_t base = 4 * n_ * n_ / 5;
    const std::uint64_t slack = n_ / 5;
    if (f.f2 < base || f.f2 > base + slack || f.f1 + f.f2 != 2 * base + slack) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(f.f2 - base);
}

Fitness rrrmo_eval(const BitString& x, std::size_t n)
{
    if (x.size() != n) {
        throw std::invalid_argument("RRRMO: string length differs from n");
    }
    return Rrrmo(n).evaluate(x);
}

RrrmoFlags rrrmo_membership(const BitString& x, std::size_t n)
{
    if (x.size() != n) {
        throw std::invalid_argument("RRRMO: string length differs from n");
    }
    return Rrrmo(n).membership(x);
}

std::vector<FrontPoint> rrrmo_front(std::size_t n)
{
    return Rrrmo(n).front();
}

// ---------------------------------------------------------------------------

namespace {

void require_div16(std::size_t n)
{
    if (n == 0 || n % 16 != 0) {
        throw std::invalid_argument("uRRRMO needs a length divisible by 16, got " + std::to_string(n));
    }
}

// Flags on an already transformed string y of length n.
UrrrmoFlags flags_of(const BitString& y, std::size_t n)
{
    const std::size_t half = n / 2;
    const std::size_t eighth = n / 8;
    UrrrmoFlags flags;

    flags.left_in_u = true;
    for (std::size_t i = 0; i < 4 && flags.left_in_u; ++i) {
        const std::size_t c = y.count_ones(i * eighth, eighth);
        // c in [n/24, n/12]
        flags.left_in_u = 24 * c >= n && 12 * c <= n;
    }
    flags.left_in_p = y.leading_ones(0, half) + y.trailing_zeros(0, half) == half;
    flags.right_in_c = y.leading_ones(half, half) + y.trailing_zeros(half, half) == half
                       || y.leading_zeros(half, half) + y.trailing_ones(half, half) == half;
    flags.right_in_t = true;
    for (std::size_t i = 0; i < 4 && flags.right_in_t; ++i) {
        flags.right_in_t = 16 * y.count_ones(half + i * eighth, eighth) == n;
    }
    return flags;
}

Fitness eval_transformed(const BitString& y, std::size_t n)
{
    const std::size_t half = n / 2;
    const UrrrmoFlags s = flags_of(y, n);
    const bool case_plain = s.left_in_u && !s.right_in_c;
    const bool case_circle = s.right_in_c;
    const bool case_optimal = s.left_in_p && s.right_in_t;
    assert(static_cast<int>(case_plain) + static_cast<int>(case_circle) + static_cast<int>(case_optimal) <= 1);

    auto inner = [&]() -> Fitness {
        const std::size_t lo = y.leading_ones(half, half);
        if (lo != 0) {
            return {lo, half + y.trailing_zeros(half, half)};
        }
        return {half + y.leading_zeros(half, half), y.trailing_ones(half, half)};
    };

    if (case_plain) {
        return inner();
    }
    if (case_circle) {
        const Fitness f = inner();
        const std::uint64_t offset = 2 * n - y.count_ones(0, half);
        return {f.f1 + offset, f.f2 + offset};
    }
    if (case_optimal) {
        return {y.leading_ones(0, half) + 3 * n, y.trailing_zeros(0, half) + 3 * n};
    }
    return {};
}

std::uint64_t binomial_coefficient(std::uint64_t n, std::uint64_t k)
{
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b)
{
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    return a * b;
}

// All strings of length len with exactly k ones, in lexicographic order of
// their set positions.
std::vector<BitString> fixed_weight_strings(std::size_t len, std::size_t k)
{
    std::vector<BitString> out;
    std::vector<std::size_t> pos(k);
    std::iota(pos.begin(), pos.end(), std::size_t{0});
    while (true) {
        BitString s(len);
        for (const auto p : pos) {
            s.set(p, true);
        }
        out.push_back(s);
        // next combination
        std::size_t i = k;
        while (i > 0 && pos[i - 1] == len - k + (i - 1)) {
            --i;
        }
        if (i == 0) {
            break;
        }
        ++pos[i - 1];
        for (std::size_t j = i; j < k; ++j) {
            pos[j] = pos[j - 1] + 1;
        }
    }
    return out;
}

} // namespace

Urrrmo::Urrrmo(std::size_t n)
    : Urrrmo(n, Permutation::identity(n), BitString(n))
{
}

Urrrmo::Urrrmo(std::size_t n, Permutation sigma, BitString z)
    : n_(n)
    , sigma_(std::move(sigma))
    , z_(std::move(z))
{
    require_div16(n);
    if (sigma_.size() != n) {
        throw std::invalid_argument("uRRRMO: permutation size " + std::to_string(sigma_.size()) + " differs from n");
    }
    if (z_.size() != n) {
        throw std::invalid_argument("uRRRMO: mask length " + std::to_string(z_.size()) + " differs from n");
    }
    identity_sigma_ = sigma_.is_identity();
    zero_mask_ = z_.count_ones() == 0;
}

BitString Urrrmo::transform(const BitString& x) const
{
    if (x.size() != n_) {
        throw std::invalid_argument("uRRRMO: string length differs from n");
    }
    BitString y = identity_sigma_ ? x : sigma_.apply(x);
    if (!zero_mask_) {
        for (std::size_t w = 0; w < y.word_count(); ++w) {
            y.set_word(w, y.word(w) ^ z_.word(w));
        }
    }
    return y;
}

Fitness Urrrmo::evaluate(const BitString& x) const
{
    if (identity_sigma_ && zero_mask_) {
        if (x.size() != n_) {
            throw std::invalid_argument("uRRRMO: string length differs from n");
        }
        return eval_transformed(x, n_);
    }
    return eval_transformed(transform(x), n_);
}

UrrrmoFlags Urrrmo::subsets(const BitString& x) const
{
    return flags_of(transform(x), n_);
}

std::vector<Fitness> Urrrmo::front_fitness() const
{
    const std::uint64_t n = n_;
    std::vector<Fitness> out;
    out.reserve(n / 2 + 1);
    for (std::uint64_t k = 0; k <= n / 2; ++k) {
        out.push_back({3 * n + k, 3 * n + n / 2 - k});
    }
    return out;
}

std::optional<std::size_t> Urrrmo::front_index(const Fitness& f) const noexcept
{
    const std::uint64_t n = n_;
    if (f.f1 < 3 * n || f.f1 > 3 * n + n / 2 || f.f1 + f.f2 != 6 * n + n / 2) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(f.f1 - 3 * n);
}

UrrrmoFlags urrrmo_subsets(const BitString& x, std::size_t n)
{
    require_div16(n);
    if (x.size() != n) {
        throw std::invalid_argument("uRRRMO: string length differs from n");
    }
    return flags_of(x, n);
}

Fitness urrrmo_eval(const BitString& x, std::size_t n)
{
    require_div16(n);
    if (x.size() != n) {
        throw std::invalid_argument("uRRRMO: string length differs from n");
    }
    return eval_transformed(x, n);
}

Fitness urrrmo_instance_eval(const BitString& x, const Permutation& sigma, const BitString& z)
{
    return Urrrmo(x.size(), sigma, z).evaluate(x);
}

UrrrmoFront urrrmo_front(std::size_t n, bool enumerate)
{
    require_div16(n);
    UrrrmoFront out;
    out.fitness_vectors = Urrrmo(n).front_fitness();
    const std::uint64_t per_block = binomial_coefficient(n / 8, n / 16);
    std::uint64_t count = n / 2 + 1;
    for (int i = 0; i < 4; ++i) {
        count = saturating_mul(count, per_block);
    }
    out.preimage_count = count;
    if (!enumerate) {
        return out;
    }
    if (count > kMaxEnumeratedPreimages) {
        throw SizeLimitError("Pareto set of uRRRMO at n=" + std::to_string(n) + " has " + std::to_string(count)
                             + " points, above the enumeration limit of " + std::to_string(kMaxEnumeratedPreimages));
    }
    const std::size_t half = n / 2;
    const std::size_t eighth = n / 8;
    const auto balanced = fixed_weight_strings(eighth, n / 16);
    std::vector<BitString> points;
    points.reserve(count);
    for (std::size_t a = 0; a <= half; ++a) {
        BitString base(n);
        for (std::size_t i = 0; i < a; ++i) {
            base.set(i, true);
        }
        for (const auto& b1 : balanced) {
            for (const auto& b2 : balanced) {
                for (const auto& b3 : balanced) {
                    for (const auto& b4 : balanced) {
                        BitString x = base;
                        std::size_t off = half;
                        for (const BitString* blk : {&b1, &b2, &b3, &b4}) {
                            for (std::size_t j = 0; j < eighth; ++j) {
                                if (blk->get(j)) {
                                    x.set(off + j, true);
                                }
                            }
                            off += eighth;
                        }
                        points.push_back(std::move(x));
                    }
                }
            }
        }
    }
    out.preimages = std::move(points);
    return out;
}

Permutation hypermutation_hard_sigma(std::size_t n)
{
    require_div16(n);
    const std::size_t eighth = n / 8;
    // output block b is taken from source block kSource[b]
    constexpr std::size_t kSource[8] = {0, 2, 4, 6, 1, 3, 5, 7};
    std::vector<std::size_t> mapping(n);
    for (std::size_t b = 0; b < 8; ++b) {
        for (std::size_t j = 0; j < eighth; ++j) {
            mapping[b * eighth + j] = kSource[b] * eighth + j + 1;
        }
    }
    return Permutation::from_one_based(mapping);
}

// ---------------------------------------------------------------------------

Problem::Problem(Rrrmo p)
    : impl_(std::move(p))
{
    front_ = std::get<Rrrmo>(impl_).front_fitness();
}

Problem::Problem(Urrrmo p)
    : impl_(std::move(p))
{
    front_ = std::get<Urrrmo>(impl_).front_fitness();
}

std::size_t Problem::n() const noexcept
{
    return std::visit([](const auto& p) { return p.n(); }, impl_);
}

Fitness Problem::evaluate(const BitString& x) const
{
    return std::visit([&](const auto& p) { return p.evaluate(x); }, impl_);
}

std::optional<std::size_t> Problem::front_index(const Fitness& f) const noexcept
{
    return std::visit([&](const auto& p) { return p.front_index(f); }, impl_);
}

std::string Problem::name() const
{
    if (const auto* u = urrrmo()) {
        if (u->sigma().is_identity() && u->mask().count_ones() == 0) {
            return "urrrmo";
        }
        return "urrrmo-sigma-z";
    }
    return "rrrmo";
}

std::size_t ProblemSpec::length_divisor() const
{
    if (kind == "rrrmo") {
        return 5;
    }
    if (kind == "urrrmo" || kind == "urrrmo-sigma-z") {
        return 16;
    }
    throw std::invalid_argument("unknown problem '" + kind + "' (expected rrrmo, urrrmo or urrrmo-sigma-z)");
}

Problem ProblemSpec::make(std::size_t n, std::uint64_t seed) const
{
    if (kind == "rrrmo") {
        return Problem(Rrrmo(n));
    }
    if (kind == "urrrmo") {
        return Problem(Urrrmo(n));
    }
    if (kind != "urrrmo-sigma-z") {
        throw std::invalid_argument("unknown problem '" + kind + "' (expected rrrmo, urrrmo or urrrmo-sigma-z)");
    }
    require_div16(n);
    Rng rng(splitmix64(seed ^ 0x5eed0f1a57a11ceULL));

    Permutation perm;
    if (sigma == "identity") {
        perm = Permutation::identity(n);
    } else if (sigma == "hypermut-hard") {
        perm = hypermutation_hard_sigma(n);
    } else if (sigma == "random") {
        std::vector<std::size_t> m(n);
        std::iota(m.begin(), m.end(), std::size_t{1});
        for (std::size_t i = n; i > 1; --i) {
            std::swap(m[i - 1], m[rng.below(i)]);
        }
        perm = Permutation::from_one_based(m);
    } else {
        perm = Permutation::parse(sigma);
    }

    BitString mask(n);
    if (z == "random") {
        for (std::size_t i = 0; i < n; ++i) {
            mask.set(i, rng.coin());
        }
    } else if (z != "zero") {
        mask = BitString::parse(z);
    }
    return Problem(Urrrmo(n, std::move(perm), std::move(mask)));
}

} // namespace emo
