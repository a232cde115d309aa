#pragma once

#include <functional>

#include "periwave/mode_solver.hpp"

namespace periwave {

/// Reference solver for one (possibly coupled) mode system
///   u' = f_k - (a + ik omega) u - b v
///   v' = -g_k + (d + ik omega) v + c u
/// with the reflection conditions. Method: integrate two homogeneous
/// trajectories (initial data (r0,1) and (1,0)) and one zero-start
/// particular trajectory with a fixed-step 6th-order Runge-Kutta scheme,
/// then match the boundary conditions by a 2x2 linear solve. Completely
/// independent of the integral-formula path; used for cross-validation.
///
/// Throws OracleSingular when the boundary-matching system is singular
/// (degenerate reflection/dissipation data).
ModeSolution collocation_solve(const ProblemSpec& spec, int k,
                               const GridFunction& fk, const GridFunction& gk);
ModeSolution collocation_solve(const ProblemSpec& spec, int k);

/// One step of the underlying RK scheme, exposed for order verification.
void rk6_step(const std::function<void(double, const Complex*, Complex*)>& rhs,
              double t, double h, Complex* y, int dim);

} // namespace periwave
