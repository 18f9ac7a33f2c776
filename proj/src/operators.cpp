#include "emo/operators.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace emo {

namespace {

constexpr double kNormTolerance = 1e-12;

std::size_t parse_size(std::string_view text, std::string_view what)
{
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument("bad " + std::string(what) + " '" + std::string(text) + "'");
    }
    return v;
}

void require_same_length(const BitString& x, const BitString& y)
{
    if (x.size() != y.size()) {
        throw std::invalid_argument("crossover parents differ in length (" + std::to_string(x.size()) + " vs "
                                    + std::to_string(y.size()) + ")");
    }
}

// Words of the first c positions.
BitString prefix_mask(std::size_t n, std::size_t c)
{
    BitString m(n);
    for (std::size_t w = 0; w < m.word_count(); ++w) {
        const std::size_t start = w * BitString::kWordBits;
        if (c >= start + BitString::kWordBits) {
            m.set_word(w, ~BitString::Word{0});
        } else if (c > start) {
            m.set_word(w, (BitString::Word{1} << (c - start)) - 1);
        }
    }
    return m;
}

// z = x where mask is 0, y where mask is 1; zbar the other way round.
Offspring blend(const BitString& x, const BitString& y, const BitString& take_y)
{
    BitString z(x.size());
    BitString zbar(x.size());
    for (std::size_t w = 0; w < x.word_count(); ++w) {
        const auto m = take_y.word(w);
        z.set_word(w, (x.word(w) & ~m) | (y.word(w) & m));
        zbar.set_word(w, (y.word(w) & ~m) | (x.word(w) & m));
    }
    return {std::move(z), std::move(zbar)};
}

} // namespace

// ---------------------------------------------------------------------------

RadiusDistribution::RadiusDistribution(std::vector<double> weights)
    : weights_(std::move(weights))
    , cdf_(weights_.size())
{
    double acc = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t r = 0; r < weights_.size(); ++r) {
        acc += weights_[r];
        cdf_[r] = acc;
        if (weights_[r] > 0.0) {
            last_positive = r;
        }
    }
    // absorb rounding so that u in [0,1) always lands inside the support
    for (std::size_t r = last_positive; r < cdf_.size(); ++r) {
        cdf_[r] = 1.0;
    }
}

RadiusDistribution RadiusDistribution::from_weights(std::vector<double> weights)
{
    if (weights.empty()) {
        throw std::invalid_argument("radius distribution needs weights for 0..n");
    }
    double sum = 0.0;
    for (std::size_t r = 0; r < weights.size(); ++r) {
        if (!(weights[r] >= 0.0) || !std::isfinite(weights[r])) {
            throw std::invalid_argument("radius weight at r=" + std::to_string(r) + " is not a non-negative number");
        }
        sum += weights[r];
    }
    if (std::abs(sum - 1.0) > kNormTolerance) {
        throw std::invalid_argument("radius weights sum to " + std::to_string(sum) + ", not 1");
    }
    return RadiusDistribution(std::move(weights));
}

RadiusDistribution RadiusDistribution::point(std::size_t n, std::size_t k)
{
    if (k > n) {
        throw std::invalid_argument("point radius " + std::to_string(k) + " exceeds n=" + std::to_string(n));
    }
    std::vector<double> w(n + 1, 0.0);
    w[k] = 1.0;
    return RadiusDistribution(std::move(w));
}

RadiusDistribution RadiusDistribution::uniform(std::size_t n)
{
    return RadiusDistribution(std::vector<double>(n + 1, 1.0 / static_cast<double>(n + 1)));
}

RadiusDistribution RadiusDistribution::binomial_one_over_n(std::size_t n)
{
    if (n == 0) {
        return point(0, 0);
    }
    const double p = 1.0 / static_cast<double>(n);
    std::vector<double> w(n + 1);
    // log-space pmf keeps the tail finite for large n
    for (std::size_t k = 0; k <= n; ++k) {
        const double lg = std::lgamma(static_cast<double>(n) + 1) - std::lgamma(static_cast<double>(k) + 1)
                          - std::lgamma(static_cast<double>(n - k) + 1);
        w[k] = std::exp(lg + static_cast<double>(k) * std::log(p) + static_cast<double>(n - k) * std::log1p(-p));
    }
    return RadiusDistribution(std::move(w));
}

RadiusDistribution RadiusDistribution::preset(std::string_view name, std::size_t n)
{
    if (name == "uniform") {
        return uniform(n);
    }
    if (name == "binomial-1-over-n") {
        return binomial_one_over_n(n);
    }
    if (name.starts_with("point:")) {
        const auto arg = name.substr(6);
        if (arg.starts_with("n/")) {
            const std::size_t d = parse_size(arg.substr(2), "radius divisor");
            if (d == 0 || n % d != 0) {
                throw std::invalid_argument("radius n/" + std::to_string(d) + " is not an integer for n="
                                            + std::to_string(n));
            }
            return point(n, n / d);
        }
        return point(n, parse_size(arg, "radius"));
    }
    throw std::invalid_argument("unknown radius preset '" + std::string(name)
                                + "' (expected point:<k>, uniform or binomial-1-over-n)");
}

std::size_t RadiusDistribution::sample(Rng& rng) const
{
    const double u = rng.uniform01();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return static_cast<std::size_t>(it - cdf_.begin());
}

// ---------------------------------------------------------------------------

BitString flip_uniform_subset(const BitString& x, std::size_t r, Rng& rng)
{
    const std::size_t n = x.size();
    if (r > n) {
        throw std::invalid_argument("flip radius exceeds string length");
    }
    // Floyd's sampling of a uniform k-subset; for r > n/2 the kept positions
    // are sampled instead.
    const bool keep_mode = 2 * r > n;
    const std::size_t k = keep_mode ? n - r : r;
    BitString chosen(n);
    for (std::size_t j = n - k; j < n; ++j) {
        const auto t = static_cast<std::size_t>(rng.below(j + 1));
        if (chosen.get(t)) {
            chosen.set(j, true);
        } else {
            chosen.set(t, true);
        }
    }
    BitString out(n);
    for (std::size_t w = 0; w < x.word_count(); ++w) {
        const auto flips = keep_mode ? ~chosen.word(w) : chosen.word(w);
        out.set_word(w, x.word(w) ^ flips);
    }
    return out;
}

BitString standard_bit_mutation(const BitString& x, Rng& rng)
{
    return unary_unbiased_mutation(x, RadiusDistribution::binomial_one_over_n(x.size()), rng);
}

BitString unary_unbiased_mutation(const BitString& x, const RadiusDistribution& radius, Rng& rng)
{
    if (radius.n() != x.size()) {
        throw std::invalid_argument("radius distribution is for n=" + std::to_string(radius.n())
                                    + " but the string has length " + std::to_string(x.size()));
    }
    return flip_uniform_subset(x, radius.sample(rng), rng);
}

BitString hypermutation(const BitString& x, double rate, Rng& rng)
{
    if (!(rate > 0.0 && rate <= 1.0)) {
        throw std::invalid_argument("hypermutation rate must lie in (0, 1], got " + std::to_string(rate));
    }
    const std::size_t n = x.size();
    BitString z = x;
    if (n == 0) {
        return z;
    }
    // c is drawn even when the window turns out empty
    const auto start = static_cast<std::size_t>(rng.below(n));
    const auto length = static_cast<std::size_t>(rng.below(n + 1));
    if (length == 0) {
        return z;
    }
    std::size_t pos = start;
    for (std::size_t k = 0; k < length; ++k) {
        // rate 1 flips deterministically and draws nothing
        if (rate >= 1.0 || rng.uniform01() < rate) {
            z.flip(pos);
        }
        if (++pos == n) {
            pos = 0;
        }
    }
    return z;
}

// ---------------------------------------------------------------------------

Offspring one_point_crossover_at(const BitString& x, const BitString& y, std::size_t c)
{
    require_same_length(x, y);
    if (c > x.size()) {
        throw std::invalid_argument("cutting point " + std::to_string(c) + " outside 0.."
                                    + std::to_string(x.size()));
    }
    // z = x on the prefix, i.e. take y where the prefix mask is 0
    return blend(x, y, prefix_mask(x.size(), c).complement());
}

Offspring one_point_crossover(const BitString& x, const BitString& y, Rng& rng)
{
    require_same_length(x, y);
    const auto c = static_cast<std::size_t>(rng.below(x.size() + 1));
    return one_point_crossover_at(x, y, c);
}

Offspring uniform_crossover(const BitString& x, const BitString& y, Rng& rng)
{
    require_same_length(x, y);
    BitString take_y(x.size());
    for (std::size_t w = 0; w < take_y.word_count(); ++w) {
        take_y.set_word(w, rng.next_u64());
    }
    return blend(x, y, take_y);
}

BitString pick_one_offspring(Offspring pair, Rng& rng)
{
    return rng.coin() ? std::move(pair.first) : std::move(pair.second);
}

// ---------------------------------------------------------------------------

MutationOperator::MutationOperator(Kind kind, std::optional<RadiusDistribution> radius, double rate)
    : kind_(kind)
    , radius_(std::move(radius))
    , rate_(rate)
{
}

MutationOperator MutationOperator::standard(std::size_t n)
{
    return {Kind::Standard, RadiusDistribution::binomial_one_over_n(n), 0.0};
}

MutationOperator MutationOperator::unbiased(RadiusDistribution radius)
{
    return {Kind::Unbiased, std::move(radius), 0.0};
}

MutationOperator MutationOperator::hyper(double rate)
{
    if (!(rate > 0.0 && rate <= 1.0)) {
        throw std::invalid_argument("hypermutation rate must lie in (0, 1], got " + std::to_string(rate));
    }
    return {Kind::Hyper, std::nullopt, rate};
}

MutationOperator MutationOperator::parse(std::string_view spec, std::size_t n)
{
    if (spec == "std") {
        return standard(n);
    }
    if (spec.starts_with("unbiased:")) {
        return unbiased(RadiusDistribution::preset(spec.substr(9), n));
    }
    if (spec.starts_with("hyper:")) {
        const auto arg = spec.substr(6);
        double rate = 0.0;
        const auto slash = arg.find('/');
        try {
            if (slash != std::string_view::npos) {
                rate = std::stod(std::string(arg.substr(0, slash))) / std::stod(std::string(arg.substr(slash + 1)));
            } else {
                std::size_t used = 0;
                rate = std::stod(std::string(arg), &used);
                if (used != arg.size()) {
                    throw std::invalid_argument("trailing characters");
                }
            }
        } catch (const std::exception&) {
            throw std::invalid_argument("bad hypermutation rate '" + std::string(arg) + "'");
        }
        return hyper(rate);
    }
    throw std::invalid_argument("unknown mutation '" + std::string(spec)
                                + "' (expected std, unbiased:<preset> or hyper:<r>)");
}

BitString MutationOperator::apply(const BitString& x, Rng& rng) const
{
    switch (kind_) {
    case Kind::Standard:
    case Kind::Unbiased:
        return unary_unbiased_mutation(x, *radius_, rng);
    case Kind::Hyper:
        return hypermutation(x, rate_, rng);
    }
    return x;
}

CrossoverKind parse_crossover(std::string_view spec)
{
    if (spec == "none") {
        return CrossoverKind::None;
    }
    if (spec == "onepoint") {
        return CrossoverKind::OnePoint;
    }
    if (spec == "uniform") {
        return CrossoverKind::Uniform;
    }
    throw std::invalid_argument("unknown crossover '" + std::string(spec) + "' (expected none, onepoint or uniform)");
}

std::string to_string(CrossoverKind kind)
{
    switch (kind) {
    case CrossoverKind::None:
        return "none";
    case CrossoverKind::OnePoint:
        return "onepoint";
    case CrossoverKind::Uniform:
        return "uniform";
    }
    return "none";
}

Offspring crossover(CrossoverKind kind, const BitString& x, const BitString& y, Rng& rng)
{
    switch (kind) {
    case CrossoverKind::OnePoint:
        return one_point_crossover(x, y, rng);
    case CrossoverKind::Uniform:
        return uniform_crossover(x, y, rng);
    case CrossoverKind::None:
        break;
    }
    require_same_length(x, y);
    return {x, y};
}

} // namespace emo
