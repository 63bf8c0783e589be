#pragma once

#include <cstddef>

namespace sparsemod {

/// Riemann zeta for real s > 1: the first `terms` terms summed smallest
/// first, plus the midpoint of the integral bounds on the tail.
/// With the default 10^6 terms the absolute error is below 1e-9 for s >= 1.5.
double riemann_zeta(double s, std::size_t terms = 1'000'000);

}  // namespace sparsemod
