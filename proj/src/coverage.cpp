#include "normapprox/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "normapprox/errors.hpp"
#include "normapprox/parallel.hpp"
#include "normapprox/rng.hpp"

namespace normapprox {

namespace {

constexpr int kLinearMaxDimension = 50;
// N ln N beyond this is reported in the log domain.
constexpr double kLogDomainThreshold = 1e300;

void require_radius(double r)
{
    if (!(r > 0.0) || !std::isfinite(r))
        throw DomainError("radius must be positive and finite");
}

void require_epsilon(double epsilon)
{
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw DomainError("epsilon must lie in (0, 1), got " + std::to_string(epsilon));
}

// ln C_n with C_n = V_n(1).
double log_unit_ball(int n)
{
    return 0.5 * n * std::log(std::numbers::pi) - std::lgamma(0.5 * n + 1.0);
}

// A_{n-1}(1) / C_{n-1} = n C_n / C_{n-1}. For odd n = 2k+1 this is the rational
// n 2^(k+1) k! / (2k+1)!!; for even n = 2k it is n pi (2k-1)!! / (2^k k!).
double area_to_ball_ratio(int n)
{
    const int k = n / 2;
    double num = n;
    double den = 1.0;
    if (n % 2 == 1) {
        num *= 2.0;
        for (int j = 1; j <= k; ++j) {
            num *= 2.0 * j;
            den *= 2.0 * j + 1.0;
        }
        return num / den;
    }
    for (int j = 1; j <= k; ++j) {
        num *= 2.0 * j - 1.0;
        den *= 2.0 * j;
    }
    return std::numbers::pi * (num / den);
}

}  // namespace

double log_ball_volume(int n, double r)
{
    if (n < 1)
        throw DomainError("ball_volume: n must be at least 1");
    require_radius(r);
    return log_unit_ball(n) + n * std::log(r);
}

double ball_volume(int n, double r)
{
    if (n > kLinearMaxDimension)
        return std::exp(log_ball_volume(n, r));
    if (n < 1)
        throw DomainError("ball_volume: n must be at least 1");
    require_radius(r);
    return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0) * std::pow(r, n);
}

double log_sphere_area(int n, double r)
{
    if (n < 2)
        throw DomainError("sphere_area: n must be at least 2");
    require_radius(r);
    return std::log(static_cast<double>(n)) + log_unit_ball(n) + (n - 1) * std::log(r);
}

double sphere_area(int n, double r)
{
    if (n > kLinearMaxDimension)
        return std::exp(log_sphere_area(n, r));
    if (n < 2)
        throw DomainError("sphere_area: n must be at least 2");
    require_radius(r);
    return n * ball_volume(n, 1.0) * std::pow(r, n - 1);
}

PatchCount patch_count(int n, double epsilon)
{
    if (n < 2)
        throw DomainError("patch_count: n must be at least 2");
    require_epsilon(epsilon);
    PatchCount out;
    out.log_exact = log_sphere_area(n, 1.0) - log_ball_volume(n - 1, epsilon);
    out.log_approx = std::log(static_cast<double>(n)) + 0.5 * std::log(std::numbers::pi) -
                     (n - 1) * std::log(epsilon);
    if (n <= kLinearMaxDimension && out.log_exact < 700.0) {
        out.exact = area_to_ball_ratio(n) * std::pow(1.0 / epsilon, n - 1);
    } else {
        out.exact = std::exp(out.log_exact);
    }
    out.approx = std::exp(out.log_approx);
    return out;
}

double CoverageEstimate::ln_expected_samples() const
{
    return log_domain ? expected_samples : std::log(expected_samples);
}

double CoverageEstimate::ln_patch_count() const
{
    return log_domain ? patch_count_exact : std::log(patch_count_exact);
}

CoverageEstimate expected_samples(int n, double epsilon)
{
    const PatchCount patches = patch_count(n, epsilon);
    CoverageEstimate out;
    out.n = n;
    out.epsilon = epsilon;
    const double log_n = patches.log_exact;
    if (log_n <= 0.0) {
        // N <= 1: a single sample already covers.
        out.patch_count_exact = patches.exact;
        out.patch_count_approx = patches.approx;
        out.expected_samples = 1.0;
        return out;
    }
    // ln(N ln N) = ln N + ln ln N
    const double log_expected = log_n + std::log(log_n);
    if (log_expected > std::log(kLogDomainThreshold)) {
        out.log_domain = true;
        out.patch_count_exact = patches.log_exact;
        out.patch_count_approx = patches.log_approx;
        out.expected_samples = log_expected;
    } else {
        out.patch_count_exact = patches.exact;
        out.patch_count_approx = patches.approx;
        out.expected_samples = patches.exact * log_n;
    }
    return out;
}

TailBound tail_bound(double c, double s)
{
    if (!(c > 1.0))
        throw DomainError("tail_bound: c must exceed 1");
    if (!(s > 0.0))
        throw DomainError("tail_bound: s must be positive");
    const double u = std::exp(-s);
    return {u, -std::expm1(-u)};
}

double coupon_expectation(std::uint64_t c)
{
    double harmonic = 0.0;
    for (std::uint64_t k = c; k >= 1; --k)
        harmonic += 1.0 / static_cast<double>(k);
    return static_cast<double>(c) * harmonic;
}

double CouponStats::exceedance(double threshold) const
{
    if (draws.empty())
        return 0.0;
    // draws are integers; "more than threshold" means draws > floor(threshold)
    const auto limit = static_cast<std::uint64_t>(std::floor(std::max(threshold, 0.0)));
    const auto it = std::upper_bound(draws.begin(), draws.end(), limit);
    return static_cast<double>(draws.end() - it) / static_cast<double>(draws.size());
}

CouponStats coupon_simulate(std::uint64_t c, std::size_t trials, std::uint64_t seed,
                            std::span<const double> probabilities, unsigned threads)
{
    if (c < 2)
        throw DomainError("coupon_simulate: need at least 2 cells");
    if (trials < 1)
        throw DomainError("coupon_simulate: need at least one trial");

    CouponStats out;
    out.draws.resize(trials);
    const std::uint64_t blocks = (trials + rng::kBlockLength - 1) / rng::kBlockLength;
    parallel_for(blocks, threads, [&](std::size_t block) {
        auto engine = rng::block_engine(seed, rng::Stream::Coupon, c, block);
        std::vector<std::uint64_t> seen_in(c, 0);
        const std::uint64_t first = block * rng::kBlockLength;
        const std::uint64_t last = std::min<std::uint64_t>(trials, first + rng::kBlockLength);
        for (std::uint64_t t = first; t < last; ++t) {
            // Stamp cells with the trial number + 1 instead of clearing.
            const std::uint64_t stamp = t + 1;
            std::uint64_t distinct = 0;
            std::uint64_t draws = 0;
            while (distinct < c) {
                const std::uint64_t cell = rng::uniform_below(engine, c);
                ++draws;
                if (seen_in[cell] != stamp) {
                    seen_in[cell] = stamp;
                    ++distinct;
                }
            }
            out.draws[t] = draws;
        }
    });

    double total = 0.0;
    for (std::uint64_t d : out.draws)
        total += static_cast<double>(d);
    out.mean_draws = total / static_cast<double>(trials);

    std::sort(out.draws.begin(), out.draws.end());
    for (double p : probabilities) {
        if (!(p >= 0.0 && p <= 1.0))
            throw DomainError("coupon_simulate: quantile probabilities must lie in [0, 1]");
        const auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(trials)));
        const std::size_t index = rank == 0 ? 0 : rank - 1;
        out.quantiles[p] = static_cast<double>(out.draws[std::min(index, trials - 1)]);
    }
    return out;
}

double log_coverage_deficiency(int n, double epsilon, double budget)
{
    if (!(budget >= 1.0))
        throw DomainError("coverage_deficiency: budget must be at least 1");
    return std::log(budget) - expected_samples(n, epsilon).ln_expected_samples();
}

double coverage_deficiency(int n, double epsilon, double budget)
{
    const double log_ratio = log_coverage_deficiency(n, epsilon, budget);
    return std::exp(std::clamp(log_ratio, -745.0, 709.0));
}

}  // namespace normapprox
