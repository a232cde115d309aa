#include <optional>
#include <string>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "periwave/artifact.hpp"
#include "periwave/collocation.hpp"
#include "periwave/errors.hpp"
#include "periwave/neumann.hpp"
#include "periwave/norms.hpp"
#include "periwave/problem_io.hpp"

namespace py = pybind11;
using namespace periwave;

// The binding layer speaks JSON text both ways: problems go in as document
// strings, results come back as report strings. The pure-python wrapper
// turns these into dicts.

namespace {

ProblemSpec spec_from_text(const std::string& text) {
    return parse_document_text(text).to_spec();
}

std::string solve_text(const std::string& text, std::optional<int> max_iter,
                       std::optional<double> tol) {
    const ProblemSpec spec = spec_from_text(text);
    nlohmann::json out;
    out["certificate"] = certificate_json(assemble_report(spec));
    try {
        const SolveReport rep = neumann_iterate(spec, max_iter, tol);
        out["solve"] = solve_json(rep);
        out["status"] =
            rep.converged ? (rep.certified ? "ok" : "uncertified-converged") : "uncertified-diverged";
    } catch (const NoCertificateConvergenceFailure& e) {
        out["solve"] = solve_json(e.report);
        out["status"] = "uncertified-diverged";
    } catch (const NondegeneracyViolation& e) {
        out["status"] = "degenerate";
        out["error"] = e.what();
    }
    return out.dump();
}

std::string run_text(const std::string& problem_path, const std::string& out_dir,
                     std::optional<int> k_max, std::optional<double> gamma,
                     std::optional<double> tol, std::optional<int> max_iter, bool emit_samples,
                     bool check_only, bool oracle, std::optional<unsigned> seed) {
    RunFlags flags;
    flags.k_max = k_max;
    flags.gamma = gamma;
    flags.tol = tol;
    flags.max_iter = max_iter;
    flags.emit_samples = emit_samples;
    flags.check_only = check_only;
    flags.oracle = oracle;
    flags.seed = seed;
    const RunArtifact art = run_solve(parse_problem(problem_path), flags, out_dir);
    return art.report.dump();
}

std::string manufactured_text(const std::string& text, unsigned seed, double tol) {
    const ManufacturedSummary sum = manufactured_test(spec_from_text(text), seed, tol);
    nlohmann::json j;
    j["pass"] = sum.pass;
    j["rel_error"] = sum.rel_error;
    j["truth_vnorm"] = sum.truth_vnorm;
    j["iterations"] = sum.iterations;
    j["certified"] = sum.certified;
    j["tol"] = sum.tol;
    return j.dump();
}

std::string solve_samples_text(const std::string& text, int nt) {
    const ProblemSpec spec = spec_from_text(text);
    const SolveReport rep = neumann_iterate(spec);
    const auto& xs = spec.grid->nodes();
    const auto su = synthesize_at(rep.solution.u, xs, nt);
    const auto sv = synthesize_at(rep.solution.v, xs, nt);
    nlohmann::json j;
    j["x"] = xs;
    nlohmann::json times = nlohmann::json::array();
    for (int n = 0; n < nt; ++n) times.push_back(n * spec.circle.period / nt);
    j["t"] = times;
    auto pack = [](const std::vector<std::vector<Complex>>& rows) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& row : rows) {
            nlohmann::json r = nlohmann::json::array();
            for (const Complex& z : row) r.push_back(nlohmann::json::array({z.real(), z.imag()}));
            out.push_back(std::move(r));
        }
        return out;
    };
    j["u"] = pack(su);
    j["v"] = pack(sv);
    return j.dump();
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "spectral solver for time-periodic 2x2 linear transport systems";

    py::register_exception<ParseError>(m, "ProblemParseError", PyExc_ValueError);
    py::register_exception<NondegeneracyViolation>(m, "DegenerateProblem", PyExc_ArithmeticError);
    py::register_exception<ConditionInapplicable>(m, "ConditionInapplicable", PyExc_ValueError);

    m.def(
        "normalize_problem",
        [](const std::string& text) { return serialize_document(parse_document_text(text)).dump(2); },
        py::arg("problem"), "Parse and re-serialize a problem document (validates it).");

    m.def(
        "check",
        [](const std::string& text) {
            return certificate_json(assemble_report(spec_from_text(text))).dump();
        },
        py::arg("problem"), "Certificate report (JSON text) for a problem document.");

    m.def("solve", &solve_text, py::arg("problem"), py::arg("max_iter") = std::nullopt,
          py::arg("tol") = std::nullopt,
          "Solve a problem document; returns certificate + solve report as JSON text.");

    m.def("run", &run_text, py::arg("problem_path"), py::arg("out_dir"),
          py::arg("k_max") = std::nullopt, py::arg("gamma") = std::nullopt,
          py::arg("tol") = std::nullopt, py::arg("max_iter") = std::nullopt,
          py::arg("emit_samples") = false, py::arg("check_only") = false,
          py::arg("oracle") = false, py::arg("seed") = std::nullopt,
          "Full harness run: writes report.json and CSVs, returns the report as JSON text.");

    m.def("manufactured", &manufactured_text, py::arg("problem"), py::arg("seed"),
          py::arg("tol") = 1e-7,
          "Manufactured-solution self-check on the coefficients of the given document.");

    m.def("solve_samples", &solve_samples_text, py::arg("problem"), py::arg("nt") = 64,
          "Solve and synthesize (x,t) samples of u and v over one period.");

    m.def(
        "boundary_determinant",
        [](const std::string& text, int k) {
            return static_cast<std::complex<double>>(boundary_determinant(spec_from_text(text), k));
        },
        py::arg("problem"), py::arg("k"), "Per-mode boundary determinant.");

    m.def(
        "determinant_lower_bound",
        [](const std::string& text) { return determinant_lower_bound(spec_from_text(text)); },
        py::arg("problem"), "k-independent lower bound for the boundary determinants.");

    m.def(
        "contraction_bound",
        [](const std::string& text) { return contraction_bound(spec_from_text(text)); },
        py::arg("problem"), "Certified contraction factor of the coupling iteration.");
}
