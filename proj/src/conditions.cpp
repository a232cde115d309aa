#include "periwave/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "periwave/errors.hpp"
#include "periwave/grid.hpp"
#include "periwave/neumann.hpp"

namespace periwave {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Pointwise samples of the four coefficients on the union piecewise
/// structure: per union piece, 64 interior Chebyshev points plus both
/// endpoints, each coefficient evaluated on its own smooth branch (the one
/// containing the piece midpoint) so breakpoint discontinuities contribute
/// both one-sided limits to the ess-inf.
struct CoefSamples {
    std::vector<double> re_a, re_d, mag_b, mag_c;
    bool b_zero = false, c_zero = false;
};

CoefSamples collect_samples(const ProblemSpec& spec, double b_scale, double c_scale) {
    std::vector<double> cuts = merge_points(spec.a.breakpoints(), spec.b.breakpoints());
    cuts = merge_points(cuts, spec.c.breakpoints());
    cuts = merge_points(cuts, spec.d.breakpoints());

    CoefSamples s;
    s.b_zero = spec.b.is_identically_zero();
    s.c_zero = spec.c.is_identically_zero();

    const int interior = 64;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double xl = cuts[i], xr = cuts[i + 1];
        const double mid = 0.5 * (xl + xr), half = 0.5 * (xr - xl);
        const int pa = spec.a.piece_index(mid);
        const int pb = spec.b.piece_index(mid);
        const int pc = spec.c.piece_index(mid);
        const int pd = spec.d.piece_index(mid);
        auto push = [&](double x) {
            s.re_a.push_back(spec.a.eval_piece(pa, x).real());
            s.re_d.push_back(spec.d.eval_piece(pd, x).real());
            s.mag_b.push_back(std::abs(spec.b.eval_piece(pb, x)) / b_scale);
            s.mag_c.push_back(std::abs(spec.c.eval_piece(pc, x)) / c_scale);
        };
        push(xl);
        for (int j = 0; j < interior; ++j) {
            const double theta = (2.0 * j + 1.0) / (2.0 * interior) * std::numbers::pi;
            push(mid - half * std::cos(theta));
        }
        push(xr);
    }
    return s;
}

/// |w|^e with the zero-coefficient rules: identically-zero terms are dropped
/// (0), pointwise zeros give 0 for positive exponents and an infinite
/// penalty otherwise.
double power_penalty(double mag, double expo, bool dropped) {
    if (dropped) return 0.0;
    if (mag == 0.0) return expo > 0.0 ? 0.0 : kInf;
    return std::pow(mag, expo);
}

struct Margins {
    double m1, m2;
};

/// sign = +2 for the damping condition, -2 for the amplification one;
/// add1/add2 are the reflection-loss credits (0 for the damping case).
Margins margins_at(const CoefSamples& s, double sign, double p, double q,
                   double add1, double add2) {
    double m1 = kInf, m2 = kInf;
    const std::size_t n = s.re_a.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double e1 = sign * s.re_a[i] - power_penalty(s.mag_b[i], 2.0 * p, s.b_zero) -
                          power_penalty(s.mag_c[i], 2.0 * q, s.c_zero);
        const double e2 = sign * s.re_d[i] - power_penalty(s.mag_b[i], 2.0 - 2.0 * p, s.b_zero) -
                          power_penalty(s.mag_c[i], 2.0 - 2.0 * q, s.c_zero);
        m1 = std::min(m1, e1);
        m2 = std::min(m2, e2);
    }
    return {m1 + add1, m2 + add2};
}

double min_spacing(const std::vector<double>& grid) {
    double s = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double d = grid[i] - grid[i - 1];
        if (d > 0.0 && (s == 0.0 || d < s)) s = d;
    }
    return s;
}

CoefScan grid_search(const CoefSamples& s, double sign, double add1, double add2,
                     const std::vector<double>& p_grid, const std::vector<double>& q_grid) {
    std::vector<double> ps = p_grid, qs = q_grid;
    std::sort(ps.begin(), ps.end());
    std::sort(qs.begin(), qs.end());

    double best_obj = -kInf;
    CoefScan scan;
    scan.p = ps.front();
    scan.q = qs.front();
    {
        const Margins m0 = margins_at(s, sign, scan.p, scan.q, add1, add2);
        scan.margin1 = m0.m1;
        scan.margin2 = m0.m2;
        best_obj = std::min(m0.m1, m0.m2);
    }
    auto consider = [&](double p, double q) {
        const Margins m = margins_at(s, sign, p, q, add1, add2);
        const double obj = std::min(m.m1, m.m2);
        if (obj > best_obj) {
            best_obj = obj;
            scan.p = p;
            scan.q = q;
            scan.margin1 = m.m1;
            scan.margin2 = m.m2;
        }
    };
    for (double p : ps)
        for (double q : qs) consider(p, q);

    // Local refinement: 3 rounds of step halving on a 5x5 neighbourhood of
    // the incumbent; iteration order keeps ties lexicographic.
    double sp = min_spacing(ps), sq = min_spacing(qs);
    for (int round = 1; round <= 3; ++round) {
        sp *= 0.5;
        sq *= 0.5;
        const double cp = scan.p, cq = scan.q;
        for (int i = -2; i <= 2; ++i) {
            if (sp == 0.0 && i != 0) continue;
            for (int j = -2; j <= 2; ++j) {
                if (sq == 0.0 && j != 0) continue;
                consider(cp + i * sp, cq + j * sq);
            }
        }
    }

    scan.pass = scan.margin1 > 0.0 && scan.margin2 > 0.0;
    return scan;
}

std::optional<CoefWitness> witness_of(const CoefScan& scan) {
    if (!scan.applicable || !scan.pass) return std::nullopt;
    return CoefWitness{scan.p, scan.q, scan.margin1, scan.margin2};
}

} // namespace

std::vector<double> default_exponent_grid() {
    std::vector<double> g;
    for (int i = -8; i <= 8; ++i) g.push_back(i * 0.25);
    return g;
}

NondegeneracyResult check_nondegeneracy(const ProblemSpec& spec) {
    NondegeneracyResult r;
    r.reflection = std::abs(spec.r0 * spec.r1);
    r.dissipation = std::exp(spec.a.integral_real() + spec.d.integral_real());
    r.margin = std::abs(r.reflection - r.dissipation);
    const double floor = 1e-12 * std::max(1.0, r.dissipation);
    r.pass = r.margin > floor;
    return r;
}

CoefScan scan_coef_plus(const ProblemSpec& spec, const std::vector<double>& p_grid,
                        const std::vector<double>& q_grid) {
    const CoefSamples s = collect_samples(spec, 1.0, 1.0);
    return grid_search(s, 2.0, 0.0, 0.0, p_grid, q_grid);
}

CoefScan scan_coef_plus(const ProblemSpec& spec) {
    return scan_coef_plus(spec, default_exponent_grid(), default_exponent_grid());
}

std::optional<CoefWitness> check_coef_plus(const ProblemSpec& spec,
                                           const std::vector<double>& p_grid,
                                           const std::vector<double>& q_grid) {
    return witness_of(scan_coef_plus(spec, p_grid, q_grid));
}

std::optional<CoefWitness> check_coef_plus(const ProblemSpec& spec) {
    return witness_of(scan_coef_plus(spec));
}

CoefScan scan_coef_minus(const ProblemSpec& spec, int m, const std::vector<double>& p_grid,
                         const std::vector<double>& q_grid) {
    if (m != 0 && m != 1)
        throw ConditionInapplicable("coef_minus requires m in {0,1}");
    const double rr = std::abs(spec.r0 * spec.r1);
    if (rr == 0.0)
        throw ConditionInapplicable("coef_minus requires r0 r1 != 0");
    const double loss = std::log(1.0 / rr);
    const CoefSamples s = collect_samples(spec, std::abs(spec.r0), std::abs(spec.r1));
    return grid_search(s, -2.0, 2.0 * (1 - m) * loss, 2.0 * m * loss, p_grid, q_grid);
}

CoefScan scan_coef_minus(const ProblemSpec& spec, int m) {
    return scan_coef_minus(spec, m, default_exponent_grid(), default_exponent_grid());
}

std::optional<CoefWitness> check_coef_minus(const ProblemSpec& spec, int m,
                                            const std::vector<double>& p_grid,
                                            const std::vector<double>& q_grid) {
    return witness_of(scan_coef_minus(spec, m, p_grid, q_grid));
}

std::optional<CoefWitness> check_coef_minus(const ProblemSpec& spec, int m) {
    return witness_of(scan_coef_minus(spec, m));
}

CertificateReport assemble_report(const ProblemSpec& spec) {
    CertificateReport rep;
    rep.nondegenerate = check_nondegeneracy(spec);
    rep.reflections_admissible = std::abs(spec.r0) < 1.0 && std::abs(spec.r1) < 1.0;
    rep.coef_plus = scan_coef_plus(spec);
    for (int m = 0; m <= 1; ++m) {
        CoefScan& slot = m == 0 ? rep.coef_minus_m0 : rep.coef_minus_m1;
        try {
            slot = scan_coef_minus(spec, m);
        } catch (const ConditionInapplicable& e) {
            slot.applicable = false;
            slot.pass = false;
            slot.note = e.what();
        }
    }
    try {
        rep.contraction.value = contraction_bound(spec);
        rep.contraction.defined = true;
        rep.contraction.pass = rep.contraction.value < 1.0;
    } catch (const NondegeneracyViolation&) {
        rep.contraction.defined = false;
        rep.contraction.pass = false;
    }

    const bool any_coef = rep.coef_plus.pass || rep.coef_minus_m0.pass || rep.coef_minus_m1.pass;
    if (rep.reflections_admissible && any_coef)
        rep.applicable_theorems.push_back("uniqueness+apriori");
    if (rep.nondegenerate.pass && rep.contraction.defined && rep.contraction.pass)
        rep.applicable_theorems.push_back("existence+neumann");
    return rep;
}

} // namespace periwave
