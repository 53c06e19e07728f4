#pragma once

#include <vector>

namespace normapprox {

struct QuarticRoots {
    /// Real roots in ascending order (repeated roots appear once per branch that produced them).
    std::vector<double> real;
    /// Set when the resolvent cubic's discriminant was too close to zero to
    /// classify its roots reliably.
    bool ambiguous = false;
};

/// Real roots of c4 x^4 + c3 x^3 + c2 x^2 + c1 x + c0 by Ferrari's method
/// (depressed quartic, resolvent cubic, two quadratic factors). c4 != 0.
QuarticRoots solve_quartic_ferrari(double c4, double c3, double c2, double c1, double c0);

}  // namespace normapprox
