#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "periwave/artifact.hpp"
#include "periwave/errors.hpp"
#include "periwave/problem_io.hpp"

// Exit codes: 0 solved (or checked, or converged without certificate),
// 2 unusable input (flags or problem document), 3 degenerate data,
// 4 iteration failed to converge, 5 internal error.
int main(int argc, char** argv) {
    CLI::App app{"periwave: spectral solver for time-periodic 2x2 transport systems"};

    std::string problem_path, out_dir;
    int k_max = 0, max_iter = 0;
    double gamma = 0.0, tol = 0.0;
    unsigned seed = 0;
    periwave::RunFlags flags;

    app.add_option("--problem", problem_path, "problem document (JSON)")->required();
    app.add_option("--out", out_dir, "output directory for report.json and CSVs")->required();
    auto* opt_kmax = app.add_option("--k-max", k_max, "override the Fourier truncation (>= 0)");
    auto* opt_gamma = app.add_option("--gamma", gamma, "override the Sobolev weight exponent");
    auto* opt_tol = app.add_option("--tol", tol, "override the iteration increment tolerance");
    auto* opt_iter = app.add_option("--max-iter", max_iter, "override the iteration budget");
    auto* opt_seed = app.add_option("--seed", seed, "seed recorded in the report");
    app.add_flag("--emit-samples", flags.emit_samples, "also write synth.csv time samples");
    app.add_flag("--check-only", flags.check_only, "run the condition checks only, no solve");
    app.add_flag("--oracle", flags.oracle,
                 "solve each mode by the collocation reference and cross-check the iteration");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (opt_kmax->count()) {
        if (k_max < 0) {
            std::cerr << "--k-max must be >= 0\n";
            return 2;
        }
        flags.k_max = k_max;
    }
    if (opt_gamma->count()) flags.gamma = gamma;
    if (opt_tol->count()) {
        if (!(tol > 0.0)) {
            std::cerr << "--tol must be positive\n";
            return 2;
        }
        flags.tol = tol;
    }
    if (opt_iter->count()) {
        if (max_iter < 1) {
            std::cerr << "--max-iter must be >= 1\n";
            return 2;
        }
        flags.max_iter = max_iter;
    }
    if (opt_seed->count()) flags.seed = seed;

    try {
        periwave::ProblemSpec spec = periwave::parse_problem(problem_path);
        const periwave::RunArtifact art = periwave::run_solve(std::move(spec), flags, out_dir);
        std::cout << "status: " << art.status << "\n";
        if (art.report.contains("solve")) {
            const auto& s = art.report["solve"];
            if (s.contains("iterations"))
                std::cout << "iterations: " << s["iterations"].dump() << "\n";
            if (s.contains("final_residual"))
                std::cout << "residual: " << s["final_residual"].dump() << "\n";
        }
        std::cout << "artifacts: " << art.out_dir << "\n";
        return art.exit_code;
    } catch (const periwave::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    }
}
