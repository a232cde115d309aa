#pragma once

#include <vector>

namespace periwave {

/// Gauss-Legendre rule on [-1,1]; exact for polynomials of degree 2n-1.
struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Cached n-point rule (Newton iteration on the Legendre recurrence).
const QuadRule& gauss_legendre(int n);

} // namespace periwave
