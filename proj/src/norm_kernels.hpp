#pragma once

// Evaluation kernels shared by the public norm functions and the sampler.
// Each kernel is parameterized by a counter policy; NullCounter compiles away.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>

#include "normapprox/norms.hpp"

namespace normapprox::detail {

struct NullCounter {
    void abs(std::size_t = 1) noexcept {}
    void comp(std::size_t = 1) noexcept {}
    void add(std::size_t = 1) noexcept {}
    void mult(std::size_t = 1) noexcept {}
    void sqrt(std::size_t = 1) noexcept {}
};

struct TallyCounter {
    OpCount counts;
    void abs(std::size_t k = 1) noexcept { counts.abs_ops += k; }
    void comp(std::size_t k = 1) noexcept { counts.comparisons += k; }
    void add(std::size_t k = 1) noexcept { counts.additions += k; }
    void mult(std::size_t k = 1) noexcept { counts.multiplications += k; }
    void sqrt(std::size_t k = 1) noexcept { counts.square_roots += k; }
};

template <class Counter>
double max_abs(std::span<const double> x, Counter& ops)
{
    double m = std::fabs(x[0]);
    ops.abs();
    for (std::size_t i = 1; i < x.size(); ++i) {
        const double a = std::fabs(x[i]);
        ops.abs();
        ops.comp();
        if (a > m)
            m = a;
    }
    return m;
}

template <class Counter>
double sum_abs(std::span<const double> x, Counter& ops)
{
    double s = std::fabs(x[0]);
    ops.abs();
    for (std::size_t i = 1; i < x.size(); ++i) {
        s += std::fabs(x[i]);
        ops.abs();
        ops.add();
    }
    return s;
}

template <class Counter>
double euclidean(std::span<const double> x, Counter& ops)
{
    double s = x[0] * x[0];
    ops.mult();
    for (std::size_t i = 1; i < x.size(); ++i) {
        s += x[i] * x[i];
        ops.mult();
        ops.add();
    }
    ops.sqrt();
    return std::sqrt(s);
}

// |x|_max + c * (sum of the remaining |x_i|) in a single pass.
template <class Counter>
double lead_plus_shared(std::span<const double> x, double shared, Counter& ops)
{
    double m = std::fabs(x[0]);
    ops.abs();
    if (x.size() == 1)
        return m;
    double rest = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) {
        const double a = std::fabs(x[i]);
        ops.abs();
        ops.comp();
        const double smaller = a > m ? m : a;
        if (a > m)
            m = a;
        if (i == 1) {
            rest = smaller;
        } else {
            rest += smaller;
            ops.add();
        }
    }
    ops.mult();
    ops.add();
    return m + shared * rest;
}

// c_max * D_inf + c_sum * D_1 in a single pass.
template <class Counter>
double max_and_sum(std::span<const double> x, double c_max, double c_sum, Counter& ops)
{
    double m = std::fabs(x[0]);
    double s = m;
    ops.abs();
    for (std::size_t i = 1; i < x.size(); ++i) {
        const double a = std::fabs(x[i]);
        ops.abs();
        s += a;
        ops.add();
        ops.comp();
        if (a > m)
            m = a;
    }
    ops.mult(2);
    ops.add();
    return c_max * m + c_sum * s;
}

// sum_i w_i x_(i); `scratch` must hold at least x.size() values.
template <class Counter>
double sorted_weighted(std::span<const double> x, std::span<const double> w,
                       std::span<double> scratch, Counter& ops)
{
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i)
        scratch[i] = std::fabs(x[i]);
    ops.abs(n);
    std::sort(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(n),
              [&ops](double a, double b) {
                  ops.comp();
                  return a > b;
              });
    double acc = w[0] * scratch[0];
    ops.mult();
    for (std::size_t i = 1; i < n; ++i) {
        acc += w[i] * scratch[i];
        ops.mult();
        ops.add();
    }
    return acc;
}

template <class Counter>
double weighted(std::span<const double> x, const WeightProfile& w, std::span<double> scratch,
                Counter& ops)
{
    switch (w.shape()) {
    case WeightProfile::Shape::LeadPlusShared:
        return lead_plus_shared(x, w.shared_weight(), ops);
    case WeightProfile::Shape::MaxAndSum:
        return max_and_sum(x, w.max_coefficient(), w.shared_weight(), ops);
    case WeightProfile::Shape::Sorted:
        break;
    }
    return sorted_weighted(x, w.weights(), scratch, ops);
}

}  // namespace normapprox::detail
