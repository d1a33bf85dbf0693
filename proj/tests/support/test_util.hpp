#pragma once

#include <cmath>
#include <vector>

#include "hypdla/geometry.hpp"
#include "hypdla/rng.hpp"

namespace hypdla::test {

/// Chart point with log-uniform ordinate in [y_lo, y_hi].
inline HalfPlanePoint random_point(RandomStream& rng, double y_lo = 1e-3, double y_hi = 1e3) {
    const double y = y_lo * std::exp(rng.u01() * std::log(y_hi / y_lo));
    const double x = rng.uniform(-3.0, 3.0) * y;
    return HalfPlanePoint(x, y);
}

inline HypIsometry random_isometry(RandomStream& rng) {
    const double beta = std::exp(rng.uniform(-3.0, 3.0));
    const double alpha = rng.uniform(-10.0, 10.0);
    return HypIsometry(alpha, beta, rng.u01() < 0.5);
}

}  // namespace hypdla::test
