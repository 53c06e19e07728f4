#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "normapprox/vector.hpp"

namespace normapprox {

struct InfinityTag {};
inline constexpr InfinityTag kInfinity{};

/// Exponent of a Minkowski norm: a real p >= 1 or the explicit infinity case.
class Exponent {
public:
    Exponent(double p);  // NOLINT: implicit from a plain number is the natural spelling
    Exponent(InfinityTag) noexcept : infinite_(true), p_(0.0) {}

    bool is_infinite() const noexcept { return infinite_; }
    double value() const noexcept { return p_; }

private:
    bool infinite_ = false;
    double p_ = 1.0;
};

/// Primitive operation tally for one norm evaluation.
struct OpCount {
    std::uint64_t abs_ops = 0;
    std::uint64_t comparisons = 0;
    std::uint64_t additions = 0;
    std::uint64_t multiplications = 0;
    std::uint64_t square_roots = 0;

    friend bool operator==(const OpCount&, const OpCount&) = default;
};

/// Per-rank weights w_1..w_n of a weighted sorted city-block norm
/// sum_i w_i x_(i), where x_(1) >= ... >= x_(n) are the sorted |x_i|.
///
/// A norm-inducing profile satisfies w_1 >= w_2 >= ... >= w_n > 0. Profiles
/// built with `general` only need finite, nonnegative weights (used for
/// degenerate cases such as (1, 0, ..., 0)).
///
/// The evaluation strategy is fixed at construction from the weight pattern:
/// `LeadPlusShared` for (1, c, ..., c), `MaxAndSum` for (w, c, ..., c) and
/// `Sorted` otherwise. Only `Sorted` needs a full ordering of |x_i|.
class WeightProfile {
public:
    enum class Shape { LeadPlusShared, MaxAndSum, Sorted };

    static WeightProfile norm_inducing(std::vector<double> weights);
    static WeightProfile general(std::vector<double> weights);
    /// Norm-inducing profile that always takes the `Sorted` path.
    static WeightProfile norm_inducing_sorted(std::vector<double> weights);

    std::size_t size() const noexcept { return weights_.size(); }
    std::span<const double> weights() const noexcept { return weights_; }
    bool is_norm_inducing() const noexcept { return norm_inducing_; }
    Shape shape() const noexcept { return shape_; }

    /// Coefficients (c_max, c_sum) with value = c_max * D_inf + c_sum * D_1,
    /// meaningful for the two non-sorted shapes.
    double max_coefficient() const noexcept { return max_coef_; }
    double shared_weight() const noexcept { return shared_; }

private:
    WeightProfile(std::vector<double> weights, bool norm_inducing, bool force_sorted);

    std::vector<double> weights_;
    bool norm_inducing_ = false;
    Shape shape_ = Shape::Sorted;
    double shared_ = 0.0;
    double max_coef_ = 0.0;
};

double norm_p(std::span<const double> x, Exponent p);
double norm_p(const VectorN& x, Exponent p);

double norm_weighted(std::span<const double> x, const WeightProfile& w);
double norm_weighted(const VectorN& x, const WeightProfile& w);

/// Same value as norm_weighted, computed along an instrumented path that
/// tallies the primitive operations it performs.
std::pair<double, OpCount> norm_weighted_counted(const VectorN& x, const WeightProfile& w);

/// Instrumented exact norms; p must be 1, 2 or infinity.
std::pair<double, OpCount> norm_p_counted(const VectorN& x, Exponent p);

}  // namespace normapprox
