#include "periwave/artifact.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "periwave/collocation.hpp"
#include "periwave/errors.hpp"
#include "periwave/norms.hpp"
#include "periwave/problem_io.hpp"

namespace periwave {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

/// k,x,re_u,im_u,re_v,im_v at the base grid nodes, ascending k then x.
void write_modes_csv(const std::string& path, const FieldPair& s, const SpatialGrid& grid) {
    std::string csv = "k,x,re_u,im_u,re_v,im_v\n";
    const int K = s.u.truncation();
    for (int k = -K; k <= K; ++k) {
        const GridFunction& uk = s.u.mode(k);
        const GridFunction& vk = s.v.mode(k);
        for (double x : grid.nodes()) {
            const Complex u = uk(x), v = vk(x);
            csv += std::to_string(k) + "," + fmt(x) + "," + fmt(u.real()) + "," + fmt(u.imag()) +
                   "," + fmt(v.real()) + "," + fmt(v.imag()) + "\n";
        }
    }
    write_text(path, csv);
}

void write_residuals_csv(const std::string& path, const FieldPair& s, const ProblemSpec& spec) {
    std::string csv = "k,res_u,res_v,res_bc\n";
    const int K = s.u.truncation();
    for (int k = -K; k <= K; ++k) {
        const ModeSolution sol{k, s.u.mode(k), s.v.mode(k)};
        const ModeResidual r = mode_residual(sol, spec, spec.f.mode(k), spec.g.mode(k));
        csv += std::to_string(k) + "," + fmt(r.res_u) + "," + fmt(r.res_v) + "," + fmt(r.res_bc) +
               "\n";
    }
    write_text(path, csv);
}

/// t,x,re_u,im_u,re_v,im_v over one period at the base nodes.
void write_synth_csv(const std::string& path, const FieldPair& s, const SpatialGrid& grid) {
    const int nt = std::max(64, s.u.circle().mode_count());
    const auto& xs = grid.nodes();
    const auto su = synthesize_at(s.u, xs, nt);
    const auto sv = synthesize_at(s.v, xs, nt);
    const double T = s.u.circle().period;
    std::string csv = "t,x,re_u,im_u,re_v,im_v\n";
    for (int n = 0; n < nt; ++n) {
        const double t = n * T / nt;
        for (std::size_t j = 0; j < xs.size(); ++j) {
            const Complex u = su[j][n], v = sv[j][n];
            csv += fmt(t) + "," + fmt(xs[j]) + "," + fmt(u.real()) + "," + fmt(u.imag()) + "," +
                   fmt(v.real()) + "," + fmt(v.imag()) + "\n";
        }
    }
    write_text(path, csv);
}

nlohmann::json scan_json(const CoefScan& scan) {
    nlohmann::json j;
    j["applicable"] = scan.applicable;
    j["pass"] = scan.pass;
    if (scan.applicable) {
        j["p"] = scan.p;
        j["q"] = scan.q;
        j["margin1"] = scan.margin1;
        j["margin2"] = scan.margin2;
    }
    if (!scan.note.empty()) j["note"] = scan.note;
    return j;
}

/// Relative w-weight of the outermost mode band of the forcing; a large
/// value flags an under-resolved truncation.
double forcing_tail(const ProblemSpec& spec) {
    const int K = spec.circle.truncation;
    if (K == 0) return 0.0;
    const double T = spec.circle.period;
    const double w = std::pow(1.0 + double(K) * K, spec.gamma);
    const double tail =
        T * w *
        (spec.f.mode(K).l2_norm_sq() + spec.f.mode(-K).l2_norm_sq() +
         spec.g.mode(K).l2_norm_sq() + spec.g.mode(-K).l2_norm_sq());
    const double total = w_norm(spec.f, spec.g, spec.gamma);
    return total > 0.0 ? std::sqrt(tail) / total : 0.0;
}

} // namespace

nlohmann::json certificate_json(const CertificateReport& rep) {
    nlohmann::json j;
    j["nondegenerate"] = {{"pass", rep.nondegenerate.pass},
                          {"margin", rep.nondegenerate.margin},
                          {"reflection", rep.nondegenerate.reflection},
                          {"dissipation", rep.nondegenerate.dissipation}};
    j["reflections_admissible"] = rep.reflections_admissible;
    j["coef_plus"] = scan_json(rep.coef_plus);
    j["coef_minus_m0"] = scan_json(rep.coef_minus_m0);
    j["coef_minus_m1"] = scan_json(rep.coef_minus_m1);
    j["contraction"] = {{"defined", rep.contraction.defined},
                        {"pass", rep.contraction.pass},
                        {"value", rep.contraction.value}};
    j["applicable_theorems"] = rep.applicable_theorems;
    return j;
}

nlohmann::json solve_json(const SolveReport& rep) {
    nlohmann::json j;
    j["iterations"] = rep.iterations;
    j["converged"] = rep.converged;
    j["certified"] = rep.certified;
    j["contraction"] = rep.contraction;
    j["observed_ratio"] = rep.observed_ratio;
    j["final_residual"] = rep.final_residual;
    j["bc_residual"] = rep.bc_residual;
    j["apriori_ratio"] = rep.apriori_ratio;
    j["forcing_norm"] = rep.forcing_norm;
    j["solution_vnorm"] = rep.solution_vnorm;
    j["solution_wnorm"] = rep.solution_wnorm;
    return j;
}

RunArtifact run_solve(ProblemSpec spec, const RunFlags& flags, const std::string& out_dir) {
    RunArtifact art;
    art.out_dir = out_dir;
    std::filesystem::create_directories(out_dir);

    nlohmann::json& rep = art.report;
    rep["schema"] = "periwave/report/v1";
    nlohmann::json jf;
    if (flags.k_max) jf["k_max"] = *flags.k_max;
    if (flags.gamma) jf["gamma"] = *flags.gamma;
    if (flags.tol) jf["tol"] = *flags.tol;
    if (flags.max_iter) jf["max_iter"] = *flags.max_iter;
    if (flags.seed) jf["seed"] = *flags.seed;
    jf["emit_samples"] = flags.emit_samples;
    jf["check_only"] = flags.check_only;
    jf["oracle"] = flags.oracle;
    rep["flags"] = jf;

    auto finish = [&](int code, const std::string& status) {
        art.exit_code = code;
        art.status = status;
        rep["status"] = status;
        rep["exit_code"] = code;
        write_text(out_dir + "/report.json", rep.dump(2) + "\n");
        return art;
    };

    try {
        if (flags.k_max) spec = with_truncation(spec, *flags.k_max);
        if (flags.gamma) spec.gamma = SobolevIndex(*flags.gamma).gamma;
        if (flags.tol) spec.tolerances.iteration = *flags.tol;
        if (flags.max_iter) spec.tolerances.max_iterations = *flags.max_iter;

        rep["problem"] = {{"period", spec.circle.period},
                          {"truncation", spec.circle.truncation},
                          {"gamma", spec.gamma},
                          {"grid_cells", spec.grid->cell_count()},
                          {"rep_order", spec.grid->rep_order()}};

        const CertificateReport cert = assemble_report(spec);
        rep["certificate"] = certificate_json(cert);
        rep["forcing_tail"] = forcing_tail(spec);

        if (flags.check_only) return finish(0, "checked");
        if (!cert.nondegenerate.pass) {
            rep["error"] = "nondegeneracy check failed: |r0 r1| matches exp(int Re(a+d))";
            return finish(3, "degenerate");
        }

        FieldPair solution;
        nlohmann::json jsolve;
        bool converged = true, certified = cert.contraction.defined && cert.contraction.pass;

        if (flags.oracle) {
            solution.u = SpectralField(spec.circle, spec.grid);
            solution.v = SpectralField(spec.circle, spec.grid);
            const int K = spec.circle.truncation;
            for (int k = -K; k <= K; ++k) {
                ModeSolution ms = collocation_solve(spec, k);
                solution.u.mode(k) = std::move(ms.u);
                solution.v.mode(k) = std::move(ms.v);
            }
            jsolve["method"] = "oracle";
            jsolve["certified"] = certified;
            jsolve["converged"] = true;
            const double fw = w_norm(spec.f, spec.g, spec.gamma);
            jsolve["forcing_norm"] = fw;
            jsolve["solution_vnorm"] = v_norm(solution, spec.gamma);
            jsolve["solution_wnorm"] = w_norm(solution, spec.gamma);
            jsolve["apriori_ratio"] = fw > 0.0 ? v_norm(solution, spec.gamma) / fw : 0.0;
            try {
                const SolveReport nrep = neumann_iterate(spec);
                const double scale = std::max(w_norm(solution, spec.gamma), 1e-300);
                FieldPair diff{solution.u - nrep.solution.u, solution.v - nrep.solution.v};
                jsolve["oracle_cross_discrepancy"] = w_norm(diff, spec.gamma) / scale;
            } catch (const NoCertificateConvergenceFailure&) {
                jsolve["oracle_cross_discrepancy"] = nullptr;
            }
        } else {
            SolveReport srep;
            try {
                srep = neumann_iterate(spec);
            } catch (const NoCertificateConvergenceFailure& e) {
                srep = e.report;
                rep["error"] = e.what();
            }
            solution = srep.solution;
            converged = srep.converged;
            certified = srep.certified;
            jsolve = solve_json(srep);
            jsolve["method"] = "neumann";
        }
        rep["solve"] = jsolve;

        // Aggregate residuals are in the report; the per-mode breakdown and
        // the mode profiles go to CSV whenever a solution exists.
        write_modes_csv(out_dir + "/modes.csv", solution, *spec.grid);
        write_residuals_csv(out_dir + "/residuals.csv", solution, spec);
        if (flags.emit_samples) write_synth_csv(out_dir + "/synth.csv", solution, *spec.grid);

        if (!converged) return finish(4, "uncertified-diverged");
        return finish(0, certified ? "ok" : "uncertified-converged");
    } catch (const NondegeneracyViolation& e) {
        rep["error"] = e.what();
        return finish(3, "degenerate");
    } catch (const OracleSingular& e) {
        rep["error"] = e.what();
        return finish(3, "degenerate");
    } catch (const std::exception& e) {
        rep["error"] = e.what();
        return finish(5, "internal-error");
    }
}

ManufacturedSummary manufactured_test(const ProblemSpec& tmpl, unsigned seed, double tol) {
    ManufacturedSummary sum;
    sum.tol = tol;

    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    auto rand_poly = [&]() {
        std::array<Complex, 4> c;
        for (auto& z : c) z = Complex(unit(rng), unit(rng));
        return c;
    };
    auto poly_eval = [](const std::array<Complex, 4>& c, double x) {
        return ((c[3] * x + c[2]) * x + c[1]) * x + c[0];
    };

    const int K = tmpl.circle.truncation;
    const auto& part = tmpl.grid->nodes();
    const int order = tmpl.grid->rep_order();
    const double omega = tmpl.circle.omega;

    ProblemSpec spec = tmpl;
    spec.f = SpectralField(spec.circle, spec.grid);
    spec.g = SpectralField(spec.circle, spec.grid);
    SpectralField tu(spec.circle, spec.grid), tv(spec.circle, spec.grid);

    for (int k = -K; k <= K; ++k) {
        std::array<Complex, 4> cu = rand_poly(), cv = rand_poly();
        // u(0) = r0 v(0), then v(1) = r1 u(1) via a correction slope that
        // leaves v(0) untouched.
        cu[0] = spec.r0 * cv[0];
        const Complex u1 = cu[0] + cu[1] + cu[2] + cu[3];
        const Complex v1 = cv[0] + cv[1] + cv[2] + cv[3];
        cv[1] += spec.r1 * u1 - v1;

        GridFunction uk = GridFunction::interpolate(part, order, [&](double x) { return poly_eval(cu, x); });
        GridFunction vk = GridFunction::interpolate(part, order, [&](double x) { return poly_eval(cv, x); });

        const Complex ik(0.0, k * omega);
        GridFunction fk = uk.derivative() + uk.multiplied(spec.a) + ik * uk + vk.multiplied(spec.b);
        GridFunction gk =
            vk.multiplied(spec.d) + ik * vk + uk.multiplied(spec.c) - vk.derivative();

        spec.f.mode(k) = std::move(fk);
        spec.g.mode(k) = std::move(gk);
        tu.mode(k) = std::move(uk);
        tv.mode(k) = std::move(vk);
    }

    const SolveReport rep = neumann_iterate(spec);
    sum.iterations = rep.iterations;
    sum.certified = rep.certified;
    sum.truth_vnorm = v_norm(tu, tv, spec.gamma);

    const FieldPair err{tu - rep.solution.u, tv - rep.solution.v};
    const double evn = v_norm(err, spec.gamma);
    sum.rel_error = sum.truth_vnorm > 0.0 ? evn / sum.truth_vnorm : evn;
    sum.pass = sum.rel_error < tol;
    return sum;
}

} // namespace periwave
