#include "normapprox/norms.hpp"

#include <array>
#include <cmath>
#include <string>

#include "normapprox/errors.hpp"
#include "norm_kernels.hpp"

namespace normapprox {

Exponent::Exponent(double p) : p_(p)
{
    if (std::isnan(p) || p < 1.0)
        throw DomainError("norm_p: exponent must satisfy p >= 1, got " + std::to_string(p));
    if (std::isinf(p)) {
        infinite_ = true;
        p_ = 0.0;
    }
}

WeightProfile::WeightProfile(std::vector<double> weights, bool norm_inducing, bool force_sorted)
    : weights_(std::move(weights)), norm_inducing_(norm_inducing)
{
    if (weights_.empty())
        throw DimensionError("WeightProfile: at least one weight is required");
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        const double wi = weights_[i];
        if (!std::isfinite(wi) || wi < 0.0)
            throw InvalidParameterError("WeightProfile: weights must be finite and nonnegative");
        if (norm_inducing_) {
            if (!(wi > 0.0))
                throw InvalidParameterError("WeightProfile: norm-inducing weights must be positive");
            if (i > 0 && wi > weights_[i - 1])
                throw InvalidParameterError("WeightProfile: norm-inducing weights must be non-increasing");
        }
    }

    const bool shared_tail =
        std::all_of(weights_.begin() + 1, weights_.end(), [&](double v) { return v == weights_.back(); });
    shared_ = weights_.size() > 1 ? weights_.back() : 0.0;
    if (force_sorted) {
        shape_ = Shape::Sorted;
    } else if (shared_tail && weights_[0] == 1.0) {
        shape_ = Shape::LeadPlusShared;
        max_coef_ = 1.0 - shared_;
    } else if (shared_tail) {
        shape_ = Shape::MaxAndSum;
        max_coef_ = weights_[0] - shared_;
    } else {
        shape_ = Shape::Sorted;
    }
}

WeightProfile WeightProfile::norm_inducing(std::vector<double> weights)
{
    return WeightProfile(std::move(weights), true, false);
}

WeightProfile WeightProfile::norm_inducing_sorted(std::vector<double> weights)
{
    return WeightProfile(std::move(weights), true, true);
}

WeightProfile WeightProfile::general(std::vector<double> weights)
{
    return WeightProfile(std::move(weights), false, false);
}

namespace {

template <class Counter>
double exact_norm(std::span<const double> x, Exponent p, Counter& ops)
{
    if (p.is_infinite())
        return detail::max_abs(x, ops);
    if (p.value() == 1.0)
        return detail::sum_abs(x, ops);
    if (p.value() == 2.0)
        return detail::euclidean(x, ops);
    double s = 0.0;
    for (double v : x)
        s += std::pow(std::fabs(v), p.value());
    return std::pow(s, 1.0 / p.value());
}

template <class Counter>
double weighted_any(std::span<const double> x, const WeightProfile& w, Counter& ops)
{
    if (x.size() != w.size())
        throw DimensionError("norm_weighted: vector has " + std::to_string(x.size()) +
                             " coordinates but profile has " + std::to_string(w.size()) + " weights");
    if (x.empty())
        throw DomainError("norm_weighted: empty vector");
    constexpr std::size_t kInline = 64;
    if (x.size() <= kInline) {
        std::array<double, kInline> scratch;
        return detail::weighted(x, w, scratch, ops);
    }
    std::vector<double> scratch(x.size());
    return detail::weighted(x, w, scratch, ops);
}

}  // namespace

double norm_p(std::span<const double> x, Exponent p)
{
    if (x.empty())
        throw DomainError("norm_p: empty vector");
    detail::NullCounter ops;
    return exact_norm(x, p, ops);
}

double norm_p(const VectorN& x, Exponent p)
{
    return norm_p(x.coords(), p);
}

double norm_weighted(std::span<const double> x, const WeightProfile& w)
{
    detail::NullCounter ops;
    return weighted_any(x, w, ops);
}

double norm_weighted(const VectorN& x, const WeightProfile& w)
{
    return norm_weighted(x.coords(), w);
}

std::pair<double, OpCount> norm_weighted_counted(const VectorN& x, const WeightProfile& w)
{
    detail::TallyCounter ops;
    const double value = weighted_any(x.coords(), w, ops);
    return {value, ops.counts};
}

std::pair<double, OpCount> norm_p_counted(const VectorN& x, Exponent p)
{
    if (!p.is_infinite() && p.value() != 1.0 && p.value() != 2.0)
        throw DomainError("norm_p_counted: only p = 1, 2 and infinity are instrumented");
    detail::TallyCounter ops;
    const double value = exact_norm(x.coords(), p, ops);
    return {value, ops.counts};
}

}  // namespace normapprox
