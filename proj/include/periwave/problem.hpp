#pragma once

#include "periwave/piecewise.hpp"
#include "periwave/spectral_field.hpp"

namespace periwave {

struct Tolerances {
    double iteration = 1e-10; // relative increment cutoff for the coupling iteration
    double boundary = 1e-10;  // reflection condition residual
    double residual = 1e-8;   // per-mode L2 equation residual
    int max_iterations = 200;
};

/// Full problem instance for
///   du/dt + du/dx + a u + b v = f,   dv/dt - dv/dx + c u + d v = g
/// on (0,1) with time period T, reflections u(0,t) = r0 v(0,t) and
/// v(1,t) = r1 u(1,t). The grid's nodes refine every coefficient breakpoint.
struct ProblemSpec {
    PiecewiseCoefficient a, b, c, d;
    Complex r0 = 0.0, r1 = 0.0;
    TimeCircle circle;
    double gamma = 2.0;
    GridPtr grid;
    SpectralField f, g;
    Tolerances tolerances;
};

/// Grid assembled from the coefficient breakpoints (plus any extras, e.g.
/// forcing pieces), uniformly refined `refinement` times.
GridPtr make_grid(const PiecewiseCoefficient& a, const PiecewiseCoefficient& b,
                  const PiecewiseCoefficient& c, const PiecewiseCoefficient& d,
                  const std::vector<std::vector<double>>& extra_breakpoints = {},
                  int refinement = 0);

} // namespace periwave
