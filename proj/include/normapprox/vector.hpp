#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace normapprox {

/// A point of R^n with n >= 1 and finite coordinates.
class VectorN {
public:
    explicit VectorN(std::vector<double> coords);
    VectorN(std::initializer_list<double> coords);

    std::size_t size() const noexcept { return coords_.size(); }
    double operator[](std::size_t i) const noexcept { return coords_[i]; }
    std::span<const double> coords() const noexcept { return coords_; }
    operator std::span<const double>() const noexcept { return coords_; }

private:
    std::vector<double> coords_;
};

}  // namespace normapprox
