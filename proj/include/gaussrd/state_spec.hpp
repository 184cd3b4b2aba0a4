#pragma once

// Resolution of CLI state descriptions into covariance matrices.

#include "gaussrd/symplectic.hpp"

#include <cmath>
#include <stdexcept>

namespace gaussrd {

inline CovMat state_from_cm(double a, double c, double b) {
    return CovMat((Matrix2d() << a, c, c, b).finished());
}

inline CovMat state_thermal(double n_s) {
    if (n_s < 0.0) throw std::invalid_argument("state_thermal: N_s must be nonnegative");
    return thermal_cm(2.0 * n_s + 1.0);
}

// diag(a, b) with a + b = trace and ab = (2 N_s + 1)^2; requires
// trace >= 2 (2 N_s + 1). b is computed as gamma_s^2 / a to keep the product
// exact for pure members of the family.
inline CovMat state_family(double trace, double n_s) {
    if (n_s < 0.0) throw std::invalid_argument("state_family: N_s must be nonnegative");
    const double gamma_s = 2.0 * n_s + 1.0;
    const double disc = trace * trace - 4.0 * gamma_s * gamma_s;
    if (disc < -1e-12 * std::max(1.0, trace * trace))
        throw std::invalid_argument("state_family: trace must be >= 2 (2 N_s + 1)");
    const double a = 0.5 * (trace + std::sqrt(std::max(0.0, disc)));
    const double b = gamma_s * gamma_s / a;
    return CovMat((Matrix2d() << a, 0.0, 0.0, b).finished());
}

}  // namespace gaussrd
