#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "periwave/conditions.hpp"
#include "periwave/neumann.hpp"
#include "periwave/problem.hpp"

namespace periwave {

/// Harness switches (the CLI maps its flags straight onto this).
struct RunFlags {
    std::optional<int> k_max;     // override the mode band; out-of-band forcing dropped
    std::optional<double> gamma;  // override the Sobolev weight
    std::optional<double> tol;    // override tolerances.iteration
    std::optional<int> max_iter;  // override tolerances.max_iterations
    bool emit_samples = false;    // write synth.csv
    bool check_only = false;      // conditions only, no solve
    bool oracle = false;          // solve by collocation, cross-check the iteration
    std::optional<unsigned> seed; // recorded in the report for provenance
};

/// Outcome of one harness run. `report` mirrors what was written to
/// report.json; `exit_code` follows the documented contract
/// {0 ok, 2 parse, 3 degenerate, 4 diverged, 5 internal}.
struct RunArtifact {
    int exit_code = 5;
    std::string status;
    std::string out_dir;
    nlohmann::json report;
};

nlohmann::json certificate_json(const CertificateReport& rep);
nlohmann::json solve_json(const SolveReport& rep);

/// Full pipeline: certificate checks, solve (unless check-only), artifact
/// files. report.json is written on every path, including failures; CSVs are
/// written whenever a solution exists. Never throws: failures are encoded in
/// status/exit_code.
RunArtifact run_solve(ProblemSpec spec, const RunFlags& flags, const std::string& out_dir);

struct ManufacturedSummary {
    bool pass = false;
    double rel_error = 0.0; // v_norm(error) / v_norm(truth); 0 for zero truth
    double truth_vnorm = 0.0;
    int iterations = 0;
    bool certified = false;
    double tol = 0.0;
};

/// Method-of-manufactured-solutions check: random per-mode cubic truth
/// satisfying the reflection conditions exactly, forcing produced by the
/// operator itself, then solved and compared in the solution norm.
ManufacturedSummary manufactured_test(const ProblemSpec& tmpl, unsigned seed, double tol = 1e-7);

} // namespace periwave
