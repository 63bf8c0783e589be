#include "sparsemod/zeta.hpp"

#include <cmath>
#include <stdexcept>

namespace sparsemod {

double riemann_zeta(double s, std::size_t terms) {
    if (!(s > 1.0)) throw std::domain_error("zeta(s) diverges for s <= 1");
    if (terms == 0) throw std::invalid_argument("need at least one term");
    double sum = 0.0;
    for (std::size_t i = terms; i >= 1; --i) sum += std::pow(static_cast<double>(i), -s);
    // int_{N+1}^inf x^-s dx <= tail <= int_N^inf x^-s dx
    const double N = static_cast<double>(terms);
    const double lower = std::pow(N + 1.0, 1.0 - s) / (s - 1.0);
    const double upper = std::pow(N, 1.0 - s) / (s - 1.0);
    return sum + 0.5 * (lower + upper);
}

}  // namespace sparsemod
