#include <cmath>
#include <complex>

#include "doctest.h"
#include "periwave/collocation.hpp"
#include "periwave/errors.hpp"
#include "periwave/neumann.hpp"
#include "periwave/norms.hpp"

using namespace periwave;
using doctest::Approx;

namespace {

ProblemSpec coupled_spec(Complex a, Complex b, Complex c, Complex d, Complex r0, Complex r1,
                         double T = 1.0, int K = 2) {
    ProblemSpec s;
    s.a = PiecewiseCoefficient::constant(a);
    s.b = PiecewiseCoefficient::constant(b);
    s.c = PiecewiseCoefficient::constant(c);
    s.d = PiecewiseCoefficient::constant(d);
    s.r0 = r0;
    s.r1 = r1;
    s.circle = TimeCircle(T, K);
    s.grid = make_grid(s.a, s.b, s.c, s.d);
    s.f = SpectralField(s.circle, s.grid);
    s.g = SpectralField(s.circle, s.grid);
    return s;
}

void set_mode(SpectralField& h, const ProblemSpec& s, int k, Complex (*fn)(double)) {
    h.mode(k) = GridFunction::interpolate(s.grid->mode_partition(k, s.circle.omega),
                                          s.grid->rep_order(), fn);
}

} // namespace

TEST_CASE("contraction bound closed forms") {
    SUBCASE("no coupling means bound zero") {
        ProblemSpec s = coupled_spec(2.0, 0.0, 0.0, 2.0, 0.5, 0.5);
        CHECK(contraction_bound(s) == 0.0);
    }

    SUBCASE("undamped small coupling") {
        // L = 3/4, bracket = 1 + (1 + (1.5)^2 / (3/4)) = 5, bound = 5 * 0.02
        ProblemSpec s = coupled_spec(0.0, 0.01, 0.01, 0.0, 0.5, 0.5);
        CHECK(contraction_bound(s) == Approx(0.1).epsilon(1e-15));
    }

    SUBCASE("degenerate data has no certificate") {
        ProblemSpec s = coupled_spec(0.0, 0.1, 0.1, 0.0, 2.0, 0.5);
        CHECK_THROWS_AS(contraction_bound(s), NondegeneracyViolation);
    }
}

TEST_CASE("apply_coupling swaps components through b and c") {
    ProblemSpec s = coupled_spec(0.0, 0.0, 0.0, 0.0, 0.5, 0.5);
    FieldPair z{SpectralField(s.circle, s.grid), SpectralField(s.circle, s.grid)};
    set_mode(z.u, s, 0, [](double x) { return Complex(x); });
    set_mode(z.v, s, 1, [](double) { return Complex(1.0); });

    SUBCASE("zero b and c annihilate") {
        FieldPair out = apply_coupling(z, s);
        CHECK(w_norm(out, 0.0) == 0.0);
    }

    SUBCASE("b = 1, c = 0 forwards v into the first slot") {
        s.b = PiecewiseCoefficient::constant(1.0);
        FieldPair out = apply_coupling(z, s);
        CHECK(std::abs(out.u.mode(1)(0.3) - 1.0) < 1e-14);
        CHECK(out.u.mode(0).sup_abs() < 1e-15);
        CHECK(w_norm(out.v, out.v, 0.0) == 0.0);
    }

    SUBCASE("a step coefficient multiplies pointwise") {
        s.b = PiecewiseCoefficient::steps({0.0, 0.5, 1.0}, {2.0, 0.0});
        s.grid = make_grid(s.a, s.b, s.c, s.d);
        FieldPair w{SpectralField(s.circle, s.grid), SpectralField(s.circle, s.grid)};
        set_mode(w.v, s, 0, [](double) { return Complex(1.0); });
        FieldPair out = apply_coupling(w, s);
        CHECK(std::abs(out.u.mode(0)(0.25) - 2.0) < 1e-14);
        CHECK(std::abs(out.u.mode(0)(0.75)) < 1e-14);
    }
}

TEST_CASE("decoupled problems converge in one corrective pass") {
    ProblemSpec s = coupled_spec(Complex(1.0, 0.5), 0.0, 0.0, Complex(0.5, -0.2), 0.4, 0.3);
    set_mode(s.f, s, 0, [](double x) { return Complex(1.0, x); });
    set_mode(s.g, s, 1, [](double x) { return Complex(x * x); });

    SolveReport rep = neumann_iterate(s);
    CHECK(rep.iterations == 1);
    CHECK(rep.converged);
    CHECK(rep.certified); // bound is exactly zero
    CHECK(rep.contraction == 0.0);

    FieldPair direct = apply_a_inverse(FieldPair{s.f, s.g}, s);
    FieldPair diff{rep.solution.u - direct.u, rep.solution.v - direct.v};
    CHECK(w_norm(diff, s.gamma) < 1e-14 * std::max(1.0, w_norm(direct, s.gamma)));
    CHECK(rep.final_residual < 1e-9 * std::max(1.0, rep.forcing_norm));
    CHECK(rep.bc_residual < 1e-12);
}

TEST_CASE("zero forcing yields the zero solution and a zero apriori ratio") {
    ProblemSpec s = coupled_spec(1.0, 0.2, 0.1, 1.0, 0.5, 0.5);
    SolveReport rep = neumann_iterate(s);
    CHECK(rep.converged);
    CHECK(rep.solution_vnorm == 0.0);
    CHECK(rep.forcing_norm == 0.0);
    CHECK(apriori_ratio(rep) == 0.0);
}

TEST_CASE("certified iteration converges and honours its certificate") {
    ProblemSpec s = coupled_spec(0.0, 0.01, 0.01, 0.0, 0.5, 0.5);
    set_mode(s.f, s, 0, [](double) { return Complex(1.0); });
    set_mode(s.g, s, 1, [](double x) { return Complex(x, -0.5); });

    SolveReport rep = neumann_iterate(s);
    REQUIRE(rep.converged);
    CHECK(rep.certified);
    CHECK(rep.contraction == Approx(0.1).epsilon(1e-14));
    CHECK(rep.observed_ratio <= rep.contraction + 0.05);
    CHECK(rep.final_residual < 1e-8 * std::max(1.0, rep.forcing_norm));
    CHECK(rep.bc_residual < 1e-11);

    // the returned iterate is a fixed point of s -> s0 - A^{-1} B s up to tol
    FieldPair s0 = apply_a_inverse(FieldPair{s.f, s.g}, s);
    FieldPair corr = apply_a_inverse(apply_coupling(rep.solution, s), s);
    FieldPair defect{rep.solution.u - (s0.u - corr.u), rep.solution.v - (s0.v - corr.v)};
    CHECK(v_norm(defect, s.gamma) <= 2.0 * s.tolerances.iteration * v_norm(s0, s.gamma));
}

TEST_CASE("iterated solution agrees with the independent reference solver") {
    ProblemSpec s = coupled_spec(2.0, 0.1, 0.1, 2.0, 0.5, 0.5, 2.0, 2);
    set_mode(s.f, s, 0, [](double) { return Complex(1.0); });
    set_mode(s.f, s, 1, [](double x) { return Complex(0.0, x); });
    set_mode(s.g, s, -1, [](double x) { return Complex(1.0 - x); });

    SolveReport rep = neumann_iterate(s);
    REQUIRE(rep.converged); // converges even though the certificate is loose
    CHECK_FALSE(rep.certified);

    FieldPair ref{SpectralField(s.circle, s.grid), SpectralField(s.circle, s.grid)};
    for (int k = -2; k <= 2; ++k) {
        ModeSolution ms = collocation_solve(s, k);
        ref.u.mode(k) = std::move(ms.u);
        ref.v.mode(k) = std::move(ms.v);
    }
    FieldPair diff{rep.solution.u - ref.u, rep.solution.v - ref.v};
    CHECK(w_norm(diff, s.gamma) <= 1e-6 * std::max(1.0, w_norm(ref, s.gamma)));
}

TEST_CASE("solver is linear and the apriori ratio is scale invariant") {
    ProblemSpec s = coupled_spec(0.5, 0.02, 0.03, 0.5, 0.3, 0.4);
    set_mode(s.f, s, 1, [](double x) { return Complex(x, 1.0); });
    SolveReport r1 = neumann_iterate(s);

    ProblemSpec s5 = s;
    s5.f *= Complex(5.0);
    SolveReport r5 = neumann_iterate(s5);

    CHECK(r5.solution_vnorm == Approx(5.0 * r1.solution_vnorm).epsilon(1e-10));
    CHECK(apriori_ratio(r5) == Approx(apriori_ratio(r1)).epsilon(1e-10));

    FieldPair scaled = r1.solution;
    scaled.u *= Complex(5.0);
    scaled.v *= Complex(5.0);
    FieldPair diff{r5.solution.u - scaled.u, r5.solution.v - scaled.v};
    CHECK(w_norm(diff, s.gamma) <= 1e-9 * std::max(1.0, r5.solution_wnorm));
}

TEST_CASE("divergence without a certificate raises a reporting failure") {
    ProblemSpec s = coupled_spec(0.0, 5.0, 5.0, 0.0, 0.5, 0.5);
    set_mode(s.f, s, 0, [](double) { return Complex(1.0); });
    CHECK(contraction_bound(s) >= 1.0);

    bool threw = false;
    try {
        neumann_iterate(s, 3);
    } catch (const NoCertificateConvergenceFailure& e) {
        threw = true;
        CHECK_FALSE(e.report.converged);
        CHECK_FALSE(e.report.certified);
        CHECK(e.report.iterations == 3);
        CHECK(e.report.contraction >= 1.0);
        CHECK(e.report.solution_vnorm > 0.0); // partial state travels with the error
    }
    CHECK(threw);
}
