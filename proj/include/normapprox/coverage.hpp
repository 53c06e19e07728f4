#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace normapprox {

/// Volume of the Euclidean n-ball of radius r, pi^(n/2) / Gamma(n/2 + 1) r^n.
double ball_volume(int n, double r);
double log_ball_volume(int n, double r);

/// Surface area of the (n-1)-sphere of radius r, the r-derivative of ball_volume.
double sphere_area(int n, double r);
double log_sphere_area(int n, double r);

struct PatchCount {
    double exact = 0.0;       ///< A_{n-1}(1) / V_{n-1}(eps); may overflow to inf
    double approx = 0.0;      ///< n sqrt(pi) / eps^(n-1)
    double log_exact = 0.0;   ///< natural logs, always finite
    double log_approx = 0.0;
};

/// Number of (n-1)-balls of radius eps needed to tile the unit sphere's area.
PatchCount patch_count(int n, double epsilon);

/// Order-of-magnitude covering estimate. The O(.) constant is taken as 1:
/// expected_samples = N ln N with N the exact patch count.
///
/// When `log_domain` is set, patch_count_exact, patch_count_approx and
/// expected_samples hold natural logarithms instead of the values themselves.
struct CoverageEstimate {
    int n = 0;
    double epsilon = 0.0;
    double patch_count_exact = 0.0;
    double patch_count_approx = 0.0;
    double expected_samples = 0.0;
    bool log_domain = false;

    double ln_expected_samples() const;
    double ln_patch_count() const;
};

CoverageEstimate expected_samples(int n, double epsilon);

struct TailBound {
    double union_bound = 0.0;  ///< e^-s
    double limit = 0.0;        ///< 1 - exp(-e^-s), the c -> infinity limit
};

/// Bounds on P(X > c ln c + s c) for the coupon collector with c cells.
TailBound tail_bound(double c, double s);

struct CouponStats {
    double mean_draws = 0.0;
    std::map<double, double> quantiles;
    std::vector<std::uint64_t> draws;  ///< per-trial draw counts, ascending

    /// Fraction of trials that needed strictly more than `threshold` draws.
    double exceedance(double threshold) const;
};

/// Classic coupon collector with c equiprobable cells, simulated `trials` times.
CouponStats coupon_simulate(std::uint64_t c, std::size_t trials, std::uint64_t seed,
                            std::span<const double> probabilities = {}, unsigned threads = 1);

/// c H_c, the exact expected number of draws.
double coupon_expectation(std::uint64_t c);

/// budget / expected_samples(n, eps); below 1 means the budget cannot be
/// expected to produce an eps-dense covering.
double coverage_deficiency(int n, double epsilon, double budget);
double log_coverage_deficiency(int n, double epsilon, double budget);

}  // namespace normapprox
