#include "periwave/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace periwave {

std::vector<double> merge_points(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    std::vector<double> dedup;
    for (double x : out)
        if (dedup.empty() || x - dedup.back() > 1e-13) dedup.push_back(x);
    if (!out.empty() && dedup.back() != out.back()) dedup.back() = out.back();
    return dedup;
}

SpatialGrid::SpatialGrid(std::vector<double> nodes, int rep_order, int quad_points)
    : nodes_(std::move(nodes)), rep_order_(rep_order), quad_points_(quad_points) {
    if (nodes_.size() < 2) throw std::invalid_argument("grid: need at least 2 nodes");
    if (nodes_.front() != 0.0 || nodes_.back() != 1.0)
        throw std::invalid_argument("grid: nodes must span [0,1]");
    for (size_t i = 0; i + 1 < nodes_.size(); ++i)
        if (!(nodes_[i] < nodes_[i + 1]))
            throw std::invalid_argument("grid: nodes must be strictly increasing");
    if (rep_order_ < 3) throw std::invalid_argument("grid: representation order too small");
    if (quad_points_ < rep_order_ + 2)
        throw std::invalid_argument("grid: quadrature must integrate squared representations");
}

SpatialGrid SpatialGrid::assemble(const std::vector<std::vector<double>>& breakpoint_sets,
                                  int refinement, int rep_order, int quad_points) {
    std::vector<double> pts = {0.0, 1.0};
    for (const auto& s : breakpoint_sets) pts = merge_points(pts, s);
    for (int r = 0; r < refinement; ++r) {
        std::vector<double> finer;
        finer.reserve(pts.size() * 2);
        for (size_t i = 0; i + 1 < pts.size(); ++i) {
            finer.push_back(pts[i]);
            finer.push_back(0.5 * (pts[i] + pts[i + 1]));
        }
        finer.push_back(pts.back());
        pts = std::move(finer);
    }
    return SpatialGrid(std::move(pts), rep_order, quad_points);
}

std::vector<double> SpatialGrid::mode_partition(int k, double omega) const {
    if (k == 0) return nodes_;
    const double phase_rate = std::abs(double(k)) * omega;
    std::vector<double> out;
    out.reserve(nodes_.size());
    for (size_t i = 0; i + 1 < nodes_.size(); ++i) {
        const double xl = nodes_[i], xr = nodes_[i + 1];
        const int nsub = std::max(1, (int)std::ceil(phase_rate * (xr - xl) / 2.0));
        for (int j = 0; j < nsub; ++j)
            out.push_back(xl + (xr - xl) * (double(j) / nsub));
    }
    out.push_back(1.0);
    return out;
}

} // namespace periwave
