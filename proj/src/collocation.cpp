#include "periwave/collocation.hpp"

#include <array>
#include <cmath>

#include "periwave/errors.hpp"

namespace periwave {

namespace {

// Butcher's 7-stage 6th-order tableau (rational coefficients; the order is
// re-verified by a convergence test in the suite).
constexpr int kStages = 7;
constexpr double kC[kStages] = {0.0, 1.0 / 2, 2.0 / 3, 1.0 / 3, 5.0 / 6, 1.0 / 6, 1.0};
constexpr double kA[kStages][kStages] = {
    {},
    {1.0 / 2},
    {2.0 / 9, 4.0 / 9},
    {7.0 / 36, 2.0 / 9, -1.0 / 12},
    {-35.0 / 144, -55.0 / 36, 35.0 / 48, 15.0 / 8},
    {-1.0 / 360, -11.0 / 36, -1.0 / 8, 1.0 / 2, 1.0 / 10},
    {-41.0 / 260, 22.0 / 13, 43.0 / 156, -118.0 / 39, 32.0 / 195, 80.0 / 39},
};
constexpr double kB[kStages] = {13.0 / 200, 0.0,      11.0 / 40, 11.0 / 40,
                                4.0 / 25,   4.0 / 25, 13.0 / 200};

constexpr int kMaxDim = 2;

} // namespace

void rk6_step(const std::function<void(double, const Complex*, Complex*)>& rhs,
              double t, double h, Complex* y, int dim) {
    Complex k[kStages][kMaxDim];
    Complex yi[kMaxDim];
    for (int s = 0; s < kStages; ++s) {
        for (int d = 0; d < dim; ++d) {
            Complex acc = y[d];
            for (int j = 0; j < s; ++j) acc += h * kA[s][j] * k[j][d];
            yi[d] = acc;
        }
        rhs(t + kC[s] * h, yi, k[s]);
    }
    for (int d = 0; d < dim; ++d) {
        Complex acc = y[d];
        for (int s = 0; s < kStages; ++s) acc += h * kB[s] * k[s][d];
        y[d] = acc;
    }
}

namespace {

struct Trajectory {
    std::vector<std::vector<Complex>> u_vals; // per cell, at representation nodes
    std::vector<std::vector<Complex>> v_vals;
    Complex u0, v0, u1, v1; // endpoint states
};

} // namespace

ModeSolution collocation_solve(const ProblemSpec& spec, int k,
                               const GridFunction& fk, const GridFunction& gk) {
    const double omega = spec.circle.omega;
    const Complex ikw(0.0, double(k) * omega);
    const auto part = spec.grid->mode_partition(k, omega);
    const int order = spec.grid->rep_order();
    const int nc = static_cast<int>(part.size()) - 1;
    const auto& sr = cheb::nodes(order);

    const double amp = spec.a.ess_sup() + spec.b.ess_sup() + spec.c.ess_sup() +
                       spec.d.ess_sup() + std::abs(double(k)) * omega;
    const double steps_per_unit = std::max(96.0, 16.0 * (amp + 1.0));

    auto integrate = [&](Complex u0, Complex v0, bool with_forcing) {
        // Stage abscissae touch the cell endpoints, where a discontinuous
        // coefficient is two-valued; pin each coefficient to the piece the
        // current cell lies in so every evaluation is the one-sided limit.
        int pa = 0, pb = 0, pc = 0, pd = 0;
        double mid = 0.0;
        auto rhs = [&](double x, const Complex* y, Complex* dy) {
            const Complex av = spec.a.eval_piece(pa, x), bv = spec.b.eval_piece(pb, x);
            const Complex cvv = spec.c.eval_piece(pc, x), dv = spec.d.eval_piece(pd, x);
            dy[0] = -(av + ikw) * y[0] - bv * y[1];
            dy[1] = (dv + ikw) * y[1] + cvv * y[0];
            if (with_forcing) {
                dy[0] += fk.eval_sided(x, mid);
                dy[1] -= gk.eval_sided(x, mid);
            }
        };
        const std::function<void(double, const Complex*, Complex*)> rhs_fn = rhs;
        Trajectory tr;
        tr.u_vals.resize(nc);
        tr.v_vals.resize(nc);
        Complex y[2] = {u0, v0};
        tr.u0 = u0;
        tr.v0 = v0;
        double x = 0.0;
        for (int cell = 0; cell < nc; ++cell) {
            const double xl = part[cell], xr = part[cell + 1];
            mid = 0.5 * (xl + xr);
            pa = spec.a.piece_index(mid);
            pb = spec.b.piece_index(mid);
            pc = spec.c.piece_index(mid);
            pd = spec.d.piece_index(mid);
            tr.u_vals[cell].resize(sr.size());
            tr.v_vals[cell].resize(sr.size());
            for (size_t j = 0; j < sr.size(); ++j) {
                const double target = 0.5 * (xl + xr) + 0.5 * (xr - xl) * sr[j];
                const double len = target - x;
                if (len > 0.0) {
                    const int m = std::max(1, (int)std::ceil(len * steps_per_unit));
                    const double h = len / m;
                    for (int s = 0; s < m; ++s) rk6_step(rhs_fn, x + s * h, h, y, 2);
                    x = target;
                }
                tr.u_vals[cell][j] = y[0];
                tr.v_vals[cell][j] = y[1];
            }
        }
        tr.u1 = y[0];
        tr.v1 = y[1];
        return tr;
    };

    const Trajectory h1 = integrate(spec.r0, 1.0, false);
    const Trajectory h2 = integrate(1.0, 0.0, false);
    const Trajectory pp = integrate(0.0, 0.0, true);

    // boundary functionals: B0 at x=0, B1 at x=1
    auto b0 = [&](const Trajectory& t) { return t.u0 - spec.r0 * t.v0; };
    auto b1 = [&](const Trajectory& t) { return t.v1 - spec.r1 * t.u1; };
    const Complex m00 = b0(h1), m01 = b0(h2);
    const Complex m10 = b1(h1), m11 = b1(h2);
    const Complex rhs0 = -b0(pp), rhs1 = -b1(pp);
    const Complex det = m00 * m11 - m01 * m10;
    const double scale = std::abs(m00 * m11) + std::abs(m01 * m10) + 1e-300;
    if (std::abs(det) < 1e-10 * std::max(1.0, scale))
        throw OracleSingular("collocation boundary matching is singular (degenerate "
                             "reflection/dissipation data)");
    const Complex c1 = (rhs0 * m11 - rhs1 * m01) / det;
    const Complex c2 = (m00 * rhs1 - m10 * rhs0) / det;

    std::vector<std::vector<Complex>> uvals(nc), vvals(nc);
    for (int cell = 0; cell < nc; ++cell) {
        uvals[cell].resize(sr.size());
        vvals[cell].resize(sr.size());
        for (size_t j = 0; j < sr.size(); ++j) {
            uvals[cell][j] =
                pp.u_vals[cell][j] + c1 * h1.u_vals[cell][j] + c2 * h2.u_vals[cell][j];
            vvals[cell][j] =
                pp.v_vals[cell][j] + c1 * h1.v_vals[cell][j] + c2 * h2.v_vals[cell][j];
        }
    }
    ModeSolution sol;
    sol.k = k;
    sol.u = GridFunction::from_cell_values(part, order, uvals);
    sol.v = GridFunction::from_cell_values(part, order, vvals);
    return sol;
}

ModeSolution collocation_solve(const ProblemSpec& spec, int k) {
    return collocation_solve(spec, k, spec.f.mode(k), spec.g.mode(k));
}

} // namespace periwave
