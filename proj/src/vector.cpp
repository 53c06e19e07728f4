#include "normapprox/vector.hpp"

#include <algorithm>
#include <cmath>

#include "normapprox/errors.hpp"

namespace normapprox {

VectorN::VectorN(std::vector<double> coords) : coords_(std::move(coords))
{
    if (coords_.empty())
        throw DimensionError("VectorN: dimension must be at least 1");
    if (!std::all_of(coords_.begin(), coords_.end(), [](double v) { return std::isfinite(v); }))
        throw DomainError("VectorN: coordinates must be finite");
}

VectorN::VectorN(std::initializer_list<double> coords) : VectorN(std::vector<double>(coords)) {}

}  // namespace normapprox
