#include "periwave/mode_solver.hpp"

#include <cmath>
#include <sstream>

#include "periwave/errors.hpp"

namespace periwave {

namespace {

Complex cexp(Complex z) { return std::exp(z); }

} // namespace

/// See header. Quadrature runs at a slightly higher degree than the stored
/// representation so the running integrals don't limit accuracy.
class ModeKernel {
public:
    int k = 0;
    double omega = 0.0;
    Complex r0, r1;
    std::vector<double> part;
    int rep_order = 12;
    int quad_order = 16;
    Complex det;            // boundary determinant
    Complex e_minus_right;  // e^{-ik omega - alpha(1)}
    Complex e_plus_right;   // e^{+ik omega + delta(1)}

    struct Cell {
        std::vector<Complex> ef_quad; // e^{+ik omega y + alpha(y)} at quadrature nodes
        std::vector<Complex> eg_quad; // e^{-ik omega y - delta(y)}
        std::vector<Complex> eu_rep;  // e^{-ik omega x - alpha(x)} at representation nodes
        std::vector<Complex> ev_rep;  // e^{+ik omega x + delta(x)}
        std::vector<double> x_quad;   // mapped quadrature (Chebyshev) nodes
        std::vector<double> x_rep;
    };
    std::vector<Cell> cells;
};

const std::vector<double>& kernel_partition(const ModeKernel& k) { return k.part; }
Complex kernel_determinant(const ModeKernel& k) { return k.det; }

Complex boundary_determinant(const ProblemSpec& spec, int k) {
    const Complex alpha1 = spec.a.antiderivative().eval(1.0);
    const Complex delta1 = spec.d.antiderivative().eval(1.0);
    const Complex ikw(0.0, double(k) * spec.circle.omega);
    return cexp(ikw + delta1) - spec.r0 * spec.r1 * cexp(-ikw - alpha1);
}

double determinant_lower_bound(const ProblemSpec& spec) {
    const double ra = spec.a.integral_real();
    const double rd = spec.d.integral_real();
    return std::abs(std::exp(rd) - std::abs(spec.r0 * spec.r1) * std::exp(-ra));
}

KernelPtr make_kernel(const ProblemSpec& spec, int k) {
    auto kernel = std::make_shared<ModeKernel>();
    kernel->k = k;
    kernel->omega = spec.circle.omega;
    kernel->r0 = spec.r0;
    kernel->r1 = spec.r1;
    kernel->rep_order = spec.grid->rep_order();
    kernel->quad_order = spec.grid->rep_order() + 4;
    kernel->part = spec.grid->mode_partition(k, kernel->omega);

    const PiecewiseCoefficient alpha = spec.a.antiderivative();
    const PiecewiseCoefficient delta = spec.d.antiderivative();
    const Complex ikw(0.0, double(k) * kernel->omega);

    kernel->e_minus_right = cexp(-ikw - alpha.eval(1.0));
    kernel->e_plus_right = cexp(ikw + delta.eval(1.0));
    kernel->det = kernel->e_plus_right - spec.r0 * spec.r1 * kernel->e_minus_right;

    const double floor = 1e-12 * std::max(1.0, std::exp(delta.eval(1.0).real()));
    if (std::abs(kernel->det) < floor) {
        std::ostringstream msg;
        msg << "mode " << k << ": boundary determinant " << std::abs(kernel->det)
            << " below degeneracy floor " << floor
            << "; the reflection/dissipation nondegeneracy condition "
               "|r0 r1| != exp(int Re(a+d)) fails or nearly fails";
        throw NondegeneracyViolation(msg.str());
    }

    const int nc = static_cast<int>(kernel->part.size()) - 1;
    const auto& sq = cheb::nodes(kernel->quad_order);
    const auto& sr = cheb::nodes(kernel->rep_order);
    kernel->cells.resize(nc);
    for (int cell = 0; cell < nc; ++cell) {
        auto& C = kernel->cells[cell];
        const double xl = kernel->part[cell], xr = kernel->part[cell + 1];
        C.x_quad.resize(sq.size());
        C.x_rep.resize(sr.size());
        C.ef_quad.resize(sq.size());
        C.eg_quad.resize(sq.size());
        C.eu_rep.resize(sr.size());
        C.ev_rep.resize(sr.size());
        for (size_t j = 0; j < sq.size(); ++j) {
            const double x = 0.5 * (xl + xr) + 0.5 * (xr - xl) * sq[j];
            C.x_quad[j] = x;
            C.ef_quad[j] = cexp(ikw * x + alpha.eval(x));
            C.eg_quad[j] = cexp(-ikw * x - delta.eval(x));
        }
        for (size_t j = 0; j < sr.size(); ++j) {
            const double x = 0.5 * (xl + xr) + 0.5 * (xr - xl) * sr[j];
            C.x_rep[j] = x;
            C.eu_rep[j] = cexp(-ikw * x - alpha.eval(x));
            C.ev_rep[j] = cexp(ikw * x + delta.eval(x));
        }
    }
    return kernel;
}

ModeProblem make_mode_problem(KernelPtr kernel, GridFunction fk, GridFunction gk) {
    ModeProblem mp;
    mp.k = kernel->k;
    mp.fk = std::move(fk);
    mp.gk = std::move(gk);
    mp.kernel = std::move(kernel);
    return mp;
}

ModeProblem make_mode_problem(const ProblemSpec& spec, int k, GridFunction fk, GridFunction gk) {
    return make_mode_problem(make_kernel(spec, k), std::move(fk), std::move(gk));
}

ModeProblem make_mode_problem(const ProblemSpec& spec, int k) {
    return make_mode_problem(spec, k, spec.f.mode(k), spec.g.mode(k));
}

ModeSolution green_solve(const ModeProblem& mp) {
    const ModeKernel& ker = *mp.kernel;
    const int nc = static_cast<int>(ker.cells.size());
    const int nq = ker.quad_order;

    // Per-cell Chebyshev antiderivatives of the weighted forcings, plus
    // prefix sums of the full-cell integrals: running integrals F, G.
    std::vector<std::vector<Complex>> af(nc), ag(nc);
    std::vector<Complex> prefix_f(nc + 1, Complex(0.0)), prefix_g(nc + 1, Complex(0.0));
    std::vector<Complex> vals(nq + 1);
    for (int cell = 0; cell < nc; ++cell) {
        const auto& C = ker.cells[cell];
        const double half = 0.5 * (ker.part[cell + 1] - ker.part[cell]);
        // quadrature nodes touch the cell endpoints: sample the forcing by
        // its one-sided limits so jumps at partition nodes stay put
        const double mid = 0.5 * (ker.part[cell] + ker.part[cell + 1]);
        for (int j = 0; j <= nq; ++j)
            vals[j] = C.ef_quad[j] * mp.fk.eval_sided(C.x_quad[j], mid);
        auto cf = cheb::vals_to_coeffs(vals);
        af[cell] = cheb::antiderivative(cf);
        for (auto& c : af[cell]) c *= half;
        for (int j = 0; j <= nq; ++j)
            vals[j] = C.eg_quad[j] * mp.gk.eval_sided(C.x_quad[j], mid);
        auto cg = cheb::vals_to_coeffs(vals);
        ag[cell] = cheb::antiderivative(cg);
        for (auto& c : ag[cell]) c *= half;
        prefix_f[cell + 1] = prefix_f[cell] + cheb::eval(af[cell], 1.0);
        prefix_g[cell + 1] = prefix_g[cell] + cheb::eval(ag[cell], 1.0);
    }
    const Complex F1 = prefix_f[nc], G1 = prefix_g[nc];

    const Complex w = ker.r1 * ker.e_minus_right * F1 + ker.e_plus_right * G1;
    const Complex cv = w / ker.det;
    const Complex cu = ker.r0 * cv;

    const auto& sr = cheb::nodes(ker.rep_order);
    std::vector<std::vector<Complex>> uvals(nc), vvals(nc);
    for (int cell = 0; cell < nc; ++cell) {
        const auto& C = ker.cells[cell];
        uvals[cell].resize(sr.size());
        vvals[cell].resize(sr.size());
        for (size_t j = 0; j < sr.size(); ++j) {
            const Complex Fx = prefix_f[cell] + cheb::eval(af[cell], sr[j]);
            const Complex Gx = prefix_g[cell] + cheb::eval(ag[cell], sr[j]);
            uvals[cell][j] = C.eu_rep[j] * (Fx + cu);
            vvals[cell][j] = C.ev_rep[j] * (-Gx + cv);
        }
    }

    ModeSolution sol;
    sol.k = ker.k;
    sol.u = GridFunction::from_cell_values(ker.part, ker.rep_order, uvals);
    sol.v = GridFunction::from_cell_values(ker.part, ker.rep_order, vvals);
    return sol;
}

ModeResidual mode_residual(const ModeSolution& sol, const ProblemSpec& spec,
                           const GridFunction& fk, const GridFunction& gk) {
    const Complex ikw(0.0, double(sol.k) * spec.circle.omega);
    GridFunction ru = sol.u.derivative() + sol.u.multiplied(spec.a) + ikw * sol.u +
                      sol.v.multiplied(spec.b) - fk;
    GridFunction rv = sol.v.derivative() - sol.v.multiplied(spec.d) - ikw * sol.v -
                      sol.u.multiplied(spec.c) + gk;
    ModeResidual r;
    r.res_u = ru.l2_norm();
    r.res_v = rv.l2_norm();
    r.res_bc = std::abs(sol.u(0.0) - spec.r0 * sol.v(0.0)) +
               std::abs(sol.v(1.0) - spec.r1 * sol.u(1.0));
    return r;
}

} // namespace periwave
