#pragma once

#include <memory>

#include "periwave/problem.hpp"

namespace periwave {

/// Forcing-independent data for solving one mode: the k-refined partition,
/// the four exponential weight families evaluated at quadrature and
/// representation nodes, and the boundary determinant.
class ModeKernel;
using KernelPtr = std::shared_ptr<const ModeKernel>;

/// Boundary determinant of mode k,
///   e^{ik omega + delta(1)} - r0 r1 e^{-ik omega - alpha(1)},
/// where alpha, delta are the running integrals of a and d.
Complex boundary_determinant(const ProblemSpec& spec, int k);

/// k-independent lower bound |e^{Re delta(1)} - |r0 r1| e^{-Re alpha(1)}|.
double determinant_lower_bound(const ProblemSpec& spec);

/// One decoupled mode problem: data for
///   u' + (a + ik omega) u = f_k,   v' - (d + ik omega) v = -g_k
/// with u(0) = r0 v(0), v(1) = r1 u(1).
struct ModeProblem {
    int k = 0;
    GridFunction fk, gk;
    KernelPtr kernel;
};

struct ModeSolution {
    int k = 0;
    GridFunction u, v;
};

struct ModeResidual {
    double res_u = 0.0; // ||u' + (a+ik omega)u + b v - f_k||_{L2}
    double res_v = 0.0; // ||v' - (d+ik omega)v - c u + g_k||_{L2}
    double res_bc = 0.0;
};

/// Build the kernel for mode k (throws NondegeneracyViolation if the
/// boundary determinant sits below the degeneracy floor
/// 1e-12 * max(1, e^{Re delta(1)})).
KernelPtr make_kernel(const ProblemSpec& spec, int k);

ModeProblem make_mode_problem(const ProblemSpec& spec, int k);
ModeProblem make_mode_problem(const ProblemSpec& spec, int k, GridFunction fk, GridFunction gk);
ModeProblem make_mode_problem(KernelPtr kernel, GridFunction fk, GridFunction gk);

/// Solve the decoupled mode problem by the explicit integral representation
///   u_k(x) = e^{-ik omega x - alpha(x)} ( F(x) + r0 w_k / det_k )
///   v_k(x) = e^{+ik omega x + delta(x)} ( -G(x) + w_k / det_k )
/// with F,G the running weighted integrals of f_k, g_k and
///   w_k = r1 e^{-ik omega - alpha(1)} F(1) + e^{ik omega + delta(1)} G(1).
/// The reflection conditions hold exactly by construction.
ModeSolution green_solve(const ModeProblem& mp);

/// L2 residuals of a candidate solution against the full coupled mode system
/// (the b,c terms participate; they vanish for decoupled problems).
ModeResidual mode_residual(const ModeSolution& sol, const ProblemSpec& spec,
                           const GridFunction& fk, const GridFunction& gk);

const std::vector<double>& kernel_partition(const ModeKernel& k);
Complex kernel_determinant(const ModeKernel& k);

} // namespace periwave
