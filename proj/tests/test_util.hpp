#pragma once

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <random>
#include <vector>

#include "normapprox/vector.hpp"

namespace testutil {

inline std::vector<double> gaussian_coords(std::mt19937_64& gen, int n)
{
    std::normal_distribution<double> nd;
    std::vector<double> v(static_cast<std::size_t>(n));
    for (double& x : v)
        x = nd(gen);
    return v;
}

inline normapprox::VectorN gaussian_vector(std::mt19937_64& gen, int n)
{
    return normapprox::VectorN(gaussian_coords(gen, n));
}

// a <= b allowing `ulps` units of rounding at the scale of the operands.
inline bool leq_ulps(double a, double b, double ulps = 4.0)
{
    return a <= b + ulps * DBL_EPSILON * std::max(std::fabs(a), std::fabs(b));
}

inline bool close_ulps(double a, double b, double ulps = 4.0)
{
    return leq_ulps(a, b, ulps) && leq_ulps(b, a, ulps);
}

// Independent reference: descending sort of |x_i| and a plain weighted sum.
inline double sorted_weighted_reference(std::vector<double> x, const std::vector<double>& w)
{
    for (double& v : x)
        v = std::fabs(v);
    std::sort(x.begin(), x.end(), [](double a, double b) { return a > b; });
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        s += w[i] * x[i];
    return s;
}

// Bisection for the root of 1 - 2 sqrt(s - s^2) = sqrt(1 + s^2 (n-1)) - 1 on (0, 1/2).
inline double lambda_bisection(int n, double tol = 1e-14)
{
    auto f = [n](double s) { return 1.0 - 2.0 * std::sqrt(s - s * s) - (std::sqrt(1.0 + s * s * (n - 1)) - 1.0); };
    double lo = 0.0, hi = 0.5;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace testutil
