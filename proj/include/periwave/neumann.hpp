#pragma once

#include <optional>

#include "periwave/mode_solver.hpp"

namespace periwave {

/// Mode-by-mode application of the inverse decoupled operator: each mode of
/// the right-hand-side pair is solved by the explicit integral formulas.
FieldPair apply_a_inverse(const FieldPair& rhs, const ProblemSpec& spec);

/// The coupling operator B(u,v) = (b v, c u), applied mode-wise.
FieldPair apply_coupling(const FieldPair& s, const ProblemSpec& spec);

/// Certified upper bound for the iteration's contraction factor:
///   [1 + e^{3||a||+3||d||} (1 + (1+|r0|)(1+|r1|) / L) (1 + ||a|| + ||d||)]
///     * (||b|| + ||c||),
/// with L the determinant lower bound. Throws NondegeneracyViolation when
/// L is zero (certificate undefined).
double contraction_bound(const ProblemSpec& spec);

struct SolveReport {
    FieldPair solution;
    int iterations = 0;
    double contraction = 0.0;    // certified bound (may exceed 1)
    bool certified = false;      // contraction < 1
    bool converged = false;
    double observed_ratio = 0.0; // max consecutive increment ratio in the solution norm
    double final_residual = 0.0; // mode-weighted aggregate of equation residuals
    double bc_residual = 0.0;    // worst reflection-condition defect
    double apriori_ratio = 0.0;  // v_norm(solution) / w_norm(forcing), 0 for zero forcing
    double forcing_norm = 0.0;   // w_norm of (f,g)
    double solution_vnorm = 0.0;
    double solution_wnorm = 0.0;
};

/// Uncertified divergence: the certificate is >= 1 and the iteration ran out
/// of budget. Carries the partial report.
class NoCertificateConvergenceFailure : public std::runtime_error {
public:
    NoCertificateConvergenceFailure(const std::string& what, SolveReport rep)
        : std::runtime_error(what), report(std::move(rep)) {}
    SolveReport report;
};

/// Fixed-point iteration s_{n+1} = A^{-1}(f,g) - A^{-1} B s_n, stopping when
/// the relative increment (solution norm) drops below tol. Runs regardless
/// of the certificate; `certified` records whether the contraction bound
/// held. Residuals of the final iterate are measured against the full
/// coupled system.
SolveReport neumann_iterate(const ProblemSpec& spec,
                            std::optional<int> max_iter = std::nullopt,
                            std::optional<double> tol = std::nullopt);

/// v_norm(solution)/w_norm(forcing) from a finished report (0 when the
/// forcing vanishes).
double apriori_ratio(const SolveReport& report);

} // namespace periwave
