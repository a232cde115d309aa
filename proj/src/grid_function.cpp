#include "periwave/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "periwave/grid.hpp"
#include "periwave/quadrature.hpp"

namespace periwave {

GridFunction::GridFunction(std::vector<double> partition, int order)
    : part_(std::move(partition)), order_(order) {
    if (part_.size() < 2) throw std::invalid_argument("grid function: need at least one cell");
    if (order_ < 0) throw std::invalid_argument("grid function: negative order");
    coef_.assign(size_t(cell_count()) * (order_ + 1), Complex(0.0));
}

GridFunction GridFunction::from_piecewise(const PiecewiseCoefficient& p,
                                          std::vector<double> partition, int order) {
    // evaluate piece polynomials directly (cell midpoints select the piece,
    // so breakpoint-coincident nodes are unambiguous)
    GridFunction g(std::move(partition), order);
    std::vector<Complex> vals(order + 1);
    const auto& ref = cheb::nodes(order);
    for (int cell = 0; cell < g.cell_count(); ++cell) {
        const double xl = g.part_[cell], xr = g.part_[cell + 1];
        const int piece = p.piece_index(0.5 * (xl + xr));
        for (int j = 0; j <= order; ++j) {
            const double x = 0.5 * (xl + xr) + 0.5 * (xr - xl) * ref[j];
            vals[j] = p.eval_piece(piece, x);
        }
        auto c = cheb::vals_to_coeffs(vals);
        std::copy(c.begin(), c.end(), g.coef_.begin() + cell * (order + 1));
    }
    return g;
}

GridFunction GridFunction::from_cell_values(std::vector<double> partition, int order,
                                            const std::vector<std::vector<Complex>>& values) {
    GridFunction g(std::move(partition), order);
    if (static_cast<int>(values.size()) != g.cell_count())
        throw std::invalid_argument("from_cell_values: one value row per cell required");
    for (int cell = 0; cell < g.cell_count(); ++cell) {
        if (static_cast<int>(values[cell].size()) != order + 1)
            throw std::invalid_argument("from_cell_values: order+1 values per cell required");
        auto c = cheb::vals_to_coeffs(values[cell]);
        std::copy(c.begin(), c.end(), g.coef_.begin() + cell * (order + 1));
    }
    return g;
}

int GridFunction::cell_of(double x) const {
    auto it = std::upper_bound(part_.begin(), part_.end(), x);
    int idx = static_cast<int>(it - part_.begin()) - 1;
    return std::clamp(idx, 0, cell_count() - 1);
}

Complex GridFunction::operator()(double x) const {
    const int cell = cell_of(x);
    const double xl = part_[cell], xr = part_[cell + 1];
    const double s = (2.0 * x - (xl + xr)) / (xr - xl);
    return cheb::eval(cell_coeffs(cell), std::clamp(s, -1.0, 1.0));
}

Complex GridFunction::eval_sided(double x, double toward) const {
    int cell = cell_of(x);
    if (toward < x && cell > 0 && part_[cell] == x) --cell;
    const double xl = part_[cell], xr = part_[cell + 1];
    const double s = (2.0 * x - (xl + xr)) / (xr - xl);
    return cheb::eval(cell_coeffs(cell), std::clamp(s, -1.0, 1.0));
}

GridFunction GridFunction::derivative() const {
    GridFunction out(part_, order_);
    for (int cell = 0; cell < cell_count(); ++cell) {
        auto d = cheb::derivative(cell_coeffs(cell));
        const double scale = 2.0 / (part_[cell + 1] - part_[cell]);
        for (int j = 0; j <= order_; ++j)
            out.coef_[cell * (order_ + 1) + j] = d[j] * scale;
    }
    return out;
}

Complex GridFunction::integral() const {
    Complex acc = 0.0;
    for (int cell = 0; cell < cell_count(); ++cell)
        acc += cheb::definite_integral(cell_coeffs(cell)) *
               (0.5 * (part_[cell + 1] - part_[cell]));
    return acc;
}

double GridFunction::l2_norm_sq() const {
    const auto& rule = gauss_legendre(order_ + 4);
    double acc = 0.0;
    for (int cell = 0; cell < cell_count(); ++cell) {
        const double half = 0.5 * (part_[cell + 1] - part_[cell]);
        auto c = cell_coeffs(cell);
        double cell_acc = 0.0;
        for (size_t q = 0; q < rule.nodes.size(); ++q)
            cell_acc += rule.weights[q] * std::norm(cheb::eval(c, rule.nodes[q]));
        acc += cell_acc * half;
    }
    return acc;
}

double GridFunction::l2_norm() const { return std::sqrt(l2_norm_sq()); }

double GridFunction::sup_abs() const {
    double best = 0.0;
    for (int cell = 0; cell < cell_count(); ++cell) {
        auto vals = cheb::coeffs_to_vals(cell_coeffs(cell));
        for (auto v : vals) best = std::max(best, std::abs(v));
    }
    return best;
}

GridFunction merged_binop(const GridFunction& a, const GridFunction& b, bool add) {
    // Sample each merged cell by its own one-sided limits so a jump of one
    // operand at a shared node cannot leak into the neighbouring cell.
    const auto part = merge_points(a.part_, b.part_);
    const int order = std::max(a.order_, b.order_);
    GridFunction out(part, order);
    const auto& ref = cheb::nodes(order);
    std::vector<Complex> vals(order + 1);
    for (int cell = 0; cell < out.cell_count(); ++cell) {
        const double xl = part[cell], xr = part[cell + 1];
        const double mid = 0.5 * (xl + xr);
        for (int j = 0; j <= order; ++j) {
            const double x = mid + 0.5 * (xr - xl) * ref[j];
            const Complex av = a.eval_sided(x, mid), bv = b.eval_sided(x, mid);
            vals[j] = add ? av + bv : av - bv;
        }
        auto c = cheb::vals_to_coeffs(vals);
        std::copy(c.begin(), c.end(), out.coef_.begin() + cell * (order + 1));
    }
    return out;
}

GridFunction& GridFunction::operator+=(const GridFunction& o) {
    if (same_layout(o)) {
        for (size_t i = 0; i < coef_.size(); ++i) coef_[i] += o.coef_[i];
        return *this;
    }
    *this = merged_binop(*this, o, true);
    return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& o) {
    if (same_layout(o)) {
        for (size_t i = 0; i < coef_.size(); ++i) coef_[i] -= o.coef_[i];
        return *this;
    }
    *this = merged_binop(*this, o, false);
    return *this;
}

GridFunction& GridFunction::operator*=(Complex s) {
    for (auto& c : coef_) c *= s;
    return *this;
}

GridFunction GridFunction::multiplied(const PiecewiseCoefficient& w) const {
    GridFunction out(part_, order_);
    const auto& ref = cheb::nodes(order_);
    std::vector<Complex> vals(order_ + 1);
    for (int cell = 0; cell < cell_count(); ++cell) {
        const double xl = part_[cell], xr = part_[cell + 1];
        const int piece = w.piece_index(0.5 * (xl + xr));
        vals = cheb::coeffs_to_vals(cell_coeffs(cell));
        for (int j = 0; j <= order_; ++j) {
            const double x = 0.5 * (xl + xr) + 0.5 * (xr - xl) * ref[j];
            vals[j] *= w.eval_piece(piece, x);
        }
        auto c = cheb::vals_to_coeffs(vals);
        std::copy(c.begin(), c.end(), out.coef_.begin() + cell * (order_ + 1));
    }
    return out;
}

GridFunction GridFunction::resampled(std::vector<double> partition, int order) const {
    GridFunction out(std::move(partition), order);
    const auto& ref = cheb::nodes(order);
    std::vector<Complex> vals(order + 1);
    for (int cell = 0; cell < out.cell_count(); ++cell) {
        const double xl = out.part_[cell], xr = out.part_[cell + 1];
        const double mid = 0.5 * (xl + xr);
        for (int j = 0; j <= order; ++j)
            vals[j] = eval_sided(mid + 0.5 * (xr - xl) * ref[j], mid);
        auto c = cheb::vals_to_coeffs(vals);
        std::copy(c.begin(), c.end(), out.coef_.begin() + cell * (order + 1));
    }
    return out;
}

} // namespace periwave
