#include "periwave/neumann.hpp"

#include <cmath>

#include "periwave/errors.hpp"
#include "periwave/norms.hpp"

namespace periwave {

namespace {

std::vector<KernelPtr> make_kernels(const ProblemSpec& spec) {
    const int K = spec.circle.truncation;
    std::vector<KernelPtr> kernels;
    kernels.reserve(2 * K + 1);
    for (int k = -K; k <= K; ++k) kernels.push_back(make_kernel(spec, k));
    return kernels;
}

FieldPair apply_a_inverse_with(const std::vector<KernelPtr>& kernels, const FieldPair& rhs,
                               const ProblemSpec& spec) {
    const int K = spec.circle.truncation;
    FieldPair out{SpectralField(spec.circle, spec.grid), SpectralField(spec.circle, spec.grid)};
    for (int k = -K; k <= K; ++k) {
        auto mp = make_mode_problem(kernels[k + K], rhs.u.mode(k), rhs.v.mode(k));
        ModeSolution sol = green_solve(mp);
        out.u.mode(k) = std::move(sol.u);
        out.v.mode(k) = std::move(sol.v);
    }
    return out;
}

} // namespace

FieldPair apply_a_inverse(const FieldPair& rhs, const ProblemSpec& spec) {
    return apply_a_inverse_with(make_kernels(spec), rhs, spec);
}

FieldPair apply_coupling(const FieldPair& s, const ProblemSpec& spec) {
    const int K = spec.circle.truncation;
    FieldPair out{SpectralField(spec.circle, spec.grid), SpectralField(spec.circle, spec.grid)};
    for (int k = -K; k <= K; ++k) {
        out.u.mode(k) = s.v.mode(k).multiplied(spec.b);
        out.v.mode(k) = s.u.mode(k).multiplied(spec.c);
    }
    return out;
}

double contraction_bound(const ProblemSpec& spec) {
    const double low = determinant_lower_bound(spec);
    if (low <= 0.0)
        throw NondegeneracyViolation(
            "contraction certificate undefined: determinant lower bound is zero "
            "(|r0 r1| = exp(int Re(a+d)))");
    const double na = spec.a.ess_sup(), nd = spec.d.ess_sup();
    const double nb = spec.b.ess_sup(), nc = spec.c.ess_sup();
    const double refl = (1.0 + std::abs(spec.r0)) * (1.0 + std::abs(spec.r1));
    const double bracket =
        1.0 + std::exp(3.0 * na + 3.0 * nd) * (1.0 + refl / low) * (1.0 + na + nd);
    return bracket * (nb + nc);
}

SolveReport neumann_iterate(const ProblemSpec& spec, std::optional<int> max_iter_opt,
                            std::optional<double> tol_opt) {
    const int max_iter = max_iter_opt.value_or(spec.tolerances.max_iterations);
    const double tol = tol_opt.value_or(spec.tolerances.iteration);

    SolveReport rep;
    rep.contraction = contraction_bound(spec); // may throw NondegeneracyViolation
    rep.certified = rep.contraction < 1.0;

    const auto kernels = make_kernels(spec);
    const FieldPair forcing{spec.f, spec.g};
    const FieldPair s0 = apply_a_inverse_with(kernels, forcing, spec);
    const double s0_vnorm = v_norm(s0, spec.gamma);

    const bool decoupled = spec.b.is_identically_zero() && spec.c.is_identically_zero();

    FieldPair s = s0;
    double prev_inc = -1.0;
    rep.observed_ratio = 0.0;
    rep.converged = false;
    for (int n = 1; n <= max_iter; ++n) {
        FieldPair snew;
        if (decoupled) {
            snew = s0; // B vanishes identically; one corrective pass suffices
        } else {
            FieldPair bs = apply_coupling(s, spec);
            FieldPair corr = apply_a_inverse_with(kernels, bs, spec);
            snew = FieldPair{s0.u - corr.u, s0.v - corr.v};
        }
        FieldPair inc{snew.u - s.u, snew.v - s.v};
        const double inc_norm = v_norm(inc, spec.gamma);
        if (prev_inc > 1e-14 * std::max(1.0, s0_vnorm))
            rep.observed_ratio = std::max(rep.observed_ratio, inc_norm / prev_inc);
        s = std::move(snew);
        rep.iterations = n;
        if (inc_norm <= tol * std::max(s0_vnorm, 1e-300)) {
            rep.converged = true;
            break;
        }
        prev_inc = inc_norm;
    }

    // residuals of the final iterate against the full coupled system
    const int K = spec.circle.truncation;
    double acc = 0.0;
    rep.bc_residual = 0.0;
    for (int k = -K; k <= K; ++k) {
        ModeSolution ms{k, s.u.mode(k), s.v.mode(k)};
        const ModeResidual r = mode_residual(ms, spec, spec.f.mode(k), spec.g.mode(k));
        acc += std::pow(1.0 + double(k) * double(k), spec.gamma) *
               (r.res_u * r.res_u + r.res_v * r.res_v);
        rep.bc_residual = std::max(rep.bc_residual, r.res_bc);
    }
    rep.final_residual = std::sqrt(spec.circle.period * acc);

    rep.forcing_norm = w_norm(spec.f, spec.g, spec.gamma);
    rep.solution_vnorm = v_norm(s, spec.gamma);
    rep.solution_wnorm = w_norm(s, spec.gamma);
    rep.apriori_ratio = rep.forcing_norm > 0.0 ? rep.solution_vnorm / rep.forcing_norm : 0.0;
    rep.solution = std::move(s);

    if (!rep.converged && !rep.certified) {
        std::string msg = "coupling iteration did not converge within " +
                          std::to_string(max_iter) + " iterations and the contraction "
                          "certificate failed (bound " +
                          std::to_string(rep.contraction) + " >= 1)";
        throw NoCertificateConvergenceFailure(msg, std::move(rep));
    }
    return rep;
}

double apriori_ratio(const SolveReport& report) { return report.apriori_ratio; }

} // namespace periwave
