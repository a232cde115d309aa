#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "periwave/chebyshev.hpp"
#include "periwave/piecewise.hpp"

namespace periwave {

/// Complex function on [0,1] stored as a per-cell Chebyshev interpolant of
/// fixed degree. Cell boundaries always include every discontinuity of the
/// data the function was built from, so each cell is smooth. Restricting a
/// polynomial piece to a subcell is exact, hence resampling onto a refining
/// partition is lossless; binary operations merge partitions first.
class GridFunction {
public:
    GridFunction() = default;
    /// Zero function.
    GridFunction(std::vector<double> partition, int order);

    template <typename F>
    static GridFunction interpolate(std::vector<double> partition, int order, F&& f) {
        GridFunction g(std::move(partition), order);
        std::vector<Complex> vals(order + 1);
        const auto& ref = cheb::nodes(order);
        for (int cell = 0; cell < g.cell_count(); ++cell) {
            const double xl = g.part_[cell], xr = g.part_[cell + 1];
            for (int j = 0; j <= order; ++j)
                vals[j] = f(0.5 * (xl + xr) + 0.5 * (xr - xl) * ref[j]);
            auto c = cheb::vals_to_coeffs(vals);
            std::copy(c.begin(), c.end(), g.coef_.begin() + cell * (order + 1));
        }
        return g;
    }

    /// Exact representation of a piecewise polynomial; the partition must
    /// refine the coefficient's breakpoints.
    static GridFunction from_piecewise(const PiecewiseCoefficient& p,
                                       std::vector<double> partition, int order);

    /// Build from per-cell values at the mapped Chebyshev-Lobatto nodes
    /// (ascending); values[cell] must have order+1 entries.
    static GridFunction from_cell_values(std::vector<double> partition, int order,
                                         const std::vector<std::vector<Complex>>& values);

    const std::vector<double>& partition() const { return part_; }
    int cell_count() const { return static_cast<int>(part_.size()) - 1; }
    int order() const { return order_; }
    std::span<const Complex> cell_coeffs(int cell) const {
        return {coef_.data() + cell * (order_ + 1), size_t(order_ + 1)};
    }

    Complex operator()(double x) const;
    /// Value at x with breakpoint hits resolved toward `toward` (one-sided
    /// limit); operator() always takes the right-hand cell at a shared node.
    Complex eval_sided(double x, double toward) const;

    GridFunction derivative() const;
    Complex integral() const;
    double l2_norm_sq() const;
    double l2_norm() const;
    /// Max of |f| over the representation nodes of every cell.
    double sup_abs() const;

    GridFunction& operator+=(const GridFunction& o);
    GridFunction& operator-=(const GridFunction& o);
    GridFunction& operator*=(Complex s);
    friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
    friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
    friend GridFunction operator*(Complex s, GridFunction g) { return g *= s; }

    /// Pointwise product with a piecewise-polynomial weight (re-interpolated
    /// at the cell nodes; partition must refine the weight's breakpoints).
    GridFunction multiplied(const PiecewiseCoefficient& w) const;

    /// Re-interpolate onto another partition (exact when it refines ours).
    GridFunction resampled(std::vector<double> partition, int order) const;

    bool same_layout(const GridFunction& o) const {
        return order_ == o.order_ && part_ == o.part_;
    }

private:
    std::vector<double> part_;
    int order_ = 0;
    std::vector<Complex> coef_; // (order_+1) coefficients per cell

    int cell_of(double x) const;
    friend GridFunction merged_binop(const GridFunction& a, const GridFunction& b, bool add);
};

} // namespace periwave
