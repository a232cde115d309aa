#include "periwave/problem.hpp"

namespace periwave {

GridPtr make_grid(const PiecewiseCoefficient& a, const PiecewiseCoefficient& b,
                  const PiecewiseCoefficient& c, const PiecewiseCoefficient& d,
                  const std::vector<std::vector<double>>& extra_breakpoints, int refinement) {
    std::vector<std::vector<double>> sets = {a.breakpoints(), b.breakpoints(), c.breakpoints(),
                                             d.breakpoints()};
    sets.insert(sets.end(), extra_breakpoints.begin(), extra_breakpoints.end());
    return std::make_shared<SpatialGrid>(SpatialGrid::assemble(sets, refinement));
}

} // namespace periwave
