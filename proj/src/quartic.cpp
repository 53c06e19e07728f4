#include "normapprox/quartic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "normapprox/errors.hpp"

namespace normapprox {

namespace {

using real = long double;

constexpr real kAmbiguousDiscriminant = 1e-12L;

// Largest real root of t^3 + a t^2 + b t + c.
real largest_cubic_root(real a, real b, real c, bool& ambiguous)
{
    const real shift = a / 3;
    const real p = b - a * a / 3;
    const real q = 2 * a * a * a / 27 - a * b / 3 + c;
    const real disc = (q / 2) * (q / 2) + (p / 3) * (p / 3) * (p / 3);
    const real scale = std::max({std::fabs(q * q / 4), std::fabs(p * p * p / 27), real(1e-300L)});
    if (std::fabs(disc) < kAmbiguousDiscriminant * scale)
        ambiguous = true;

    real t;
    if (disc > 0) {
        const real sq = std::sqrt(disc);
        t = std::cbrt(-q / 2 + sq) + std::cbrt(-q / 2 - sq);
    } else if (p == 0) {
        t = std::cbrt(-q);
    } else {
        const real r = 2 * std::sqrt(-p / 3);
        real arg = 3 * q / (p * r);
        arg = std::clamp(arg, real(-1), real(1));
        t = r * std::cos(std::acos(arg) / 3);
    }
    real m = t - shift;
    // Newton refinement on the undepressed cubic.
    for (int it = 0; it < 4; ++it) {
        const real f = ((m + a) * m + b) * m + c;
        const real df = (3 * m + 2 * a) * m + b;
        if (df == 0)
            break;
        const real step = f / df;
        m -= step;
        if (std::fabs(step) <= std::numeric_limits<real>::epsilon() * std::fabs(m))
            break;
    }
    return m;
}

void quadratic_roots(real b, real c, std::vector<real>& out)
{
    // y^2 + b y + c = 0
    const real disc = b * b - 4 * c;
    if (disc < 0)
        return;
    const real sq = std::sqrt(disc);
    const real qq = -(b + std::copysign(sq, b)) / 2;
    if (qq != 0) {
        out.push_back(qq);
        out.push_back(c / qq);
    } else {
        out.push_back(0);
        out.push_back(0);
    }
}

}  // namespace

QuarticRoots solve_quartic_ferrari(double c4, double c3, double c2, double c1, double c0)
{
    if (c4 == 0.0)
        throw DomainError("solve_quartic_ferrari: leading coefficient is zero");

    const real a = real(c3) / c4;
    const real b = real(c2) / c4;
    const real c = real(c1) / c4;
    const real d = real(c0) / c4;

    // x = y - a/4 gives y^4 + p y^2 + q y + r.
    const real shift = a / 4;
    const real p = b - 3 * a * a / 8;
    const real q = a * a * a / 8 - a * b / 2 + c;
    const real r = -3 * a * a * a * a / 256 + a * a * b / 16 - a * c / 4 + d;

    QuarticRoots result;
    std::vector<real> ys;
    const real qscale = std::max({real(1), std::fabs(p), std::fabs(r)});
    if (std::fabs(q) <= 1e-18L * qscale) {
        // Biquadratic: z^2 + p z + r with z = y^2.
        std::vector<real> zs;
        quadratic_roots(p, r, zs);
        for (real z : zs) {
            if (z >= 0) {
                ys.push_back(std::sqrt(z));
                ys.push_back(-std::sqrt(z));
            }
        }
    } else {
        // (y^2 + p/2 + m)^2 = 2m y^2 - q y + (m^2 + m p + p^2/4 - r) is a perfect
        // square when m solves m^3 + p m^2 + (p^2/4 - r) m - q^2/8 = 0; that
        // cubic is negative at 0, so its largest root is positive.
        const real m = largest_cubic_root(p, p * p / 4 - r, -q * q / 8, result.ambiguous);
        if (!(m > 0))
            throw NumericalError("solve_quartic_ferrari: resolvent cubic has no positive root");
        const real s = std::sqrt(2 * m);
        const real k = q / (2 * s);
        quadratic_roots(-s, p / 2 + m + k, ys);
        quadratic_roots(s, p / 2 + m - k, ys);
    }

    for (real y : ys)
        result.real.push_back(static_cast<double>(y - shift));
    std::sort(result.real.begin(), result.real.end());
    return result;
}

}  // namespace normapprox
