#pragma once

#include <memory>
#include <vector>

namespace periwave {

/// Merge two ascending point sets, collapsing near-duplicates.
std::vector<double> merge_points(const std::vector<double>& a, const std::vector<double>& b);

/// Spatial mesh on [0,1]. `nodes` carries every coefficient breakpoint (a
/// hard invariant: cells never straddle a discontinuity) plus optional
/// uniform refinement. Representation/quadrature orders are per-cell
/// Chebyshev degree and Gauss-Legendre point count.
class SpatialGrid {
public:
    explicit SpatialGrid(std::vector<double> nodes, int rep_order = 12, int quad_points = 16);

    /// nodes = union of the given breakpoint lists, each cell then split
    /// 2^refinement times.
    static SpatialGrid assemble(const std::vector<std::vector<double>>& breakpoint_sets,
                                int refinement = 0, int rep_order = 12, int quad_points = 16);

    const std::vector<double>& nodes() const { return nodes_; }
    int cell_count() const { return static_cast<int>(nodes_.size()) - 1; }
    int rep_order() const { return rep_order_; }
    int quad_points() const { return quad_points_; }

    /// Partition used to represent mode k: every base cell is subdivided so
    /// the phase |k| * omega * h per subcell stays <= 2 (at least the
    /// ceil(|k| omega h / pi) subdivision needed for resolved oscillations).
    std::vector<double> mode_partition(int k, double omega) const;

    friend bool operator==(const SpatialGrid& a, const SpatialGrid& b) {
        return a.nodes_ == b.nodes_ && a.rep_order_ == b.rep_order_ &&
               a.quad_points_ == b.quad_points_;
    }

private:
    std::vector<double> nodes_;
    int rep_order_;
    int quad_points_;
};

using GridPtr = std::shared_ptr<const SpatialGrid>;

} // namespace periwave
