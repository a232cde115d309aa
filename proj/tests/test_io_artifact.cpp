#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "periwave/artifact.hpp"
#include "periwave/errors.hpp"
#include "periwave/mode_solver.hpp"
#include "periwave/norms.hpp"
#include "periwave/problem_io.hpp"

using namespace periwave;
using doctest::Approx;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string first_line(const fs::path& p) {
    const std::string text = slurp(p);
    return text.substr(0, text.find('\n'));
}

fs::path scratch_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "periwave_io_tests" / name;
    fs::remove_all(dir);
    return dir;
}

// expects parse_document_text to throw with the given pointer path
void expect_error(const std::string& text, const std::string& path) {
    try {
        parse_document_text(text);
        FAIL_CHECK("expected ParseError at ", path, " for: ", text);
    } catch (const ParseError& e) {
        CHECK(e.path() == path);
    }
}

ProblemSpec certified_spec() {
    ProblemSpec s;
    s.b = PiecewiseCoefficient::constant(0.01);
    s.c = PiecewiseCoefficient::constant(0.01);
    s.r0 = 0.5;
    s.r1 = 0.5;
    s.circle = TimeCircle(1.0, 1);
    s.grid = make_grid(s.a, s.b, s.c, s.d);
    s.f = SpectralField(s.circle, s.grid);
    s.g = SpectralField(s.circle, s.grid);
    s.f.mode(0) = GridFunction::interpolate(s.grid->nodes(), s.grid->rep_order(),
                                            [](double) { return Complex(1.0); });
    return s;
}

} // namespace

TEST_CASE("minimal document parses with explicit defaults") {
    ProblemDocument d = parse_document_text(
        R"({"schema":"periwave/problem/v1","period":2.0,"coefficients":{}})");
    CHECK(d.period == 2.0);
    CHECK(d.truncation == 64);
    CHECK(d.gamma == 2.0);
    CHECK(d.r0 == Complex(0.0));
    CHECK(d.r1 == Complex(0.0));
    CHECK(d.a.is_identically_zero());
    CHECK(d.modes.empty());
    CHECK_FALSE(d.samples.has_value());
    CHECK(d.refinement == 0);
    CHECK(d.tolerances.iteration == 1e-10);
    CHECK(d.tolerances.max_iterations == 200);

    ProblemSpec s = d.to_spec();
    CHECK(s.circle.truncation == 64);
    CHECK(s.grid->nodes() == std::vector<double>{0.0, 1.0});
    CHECK(w_norm(s.f, s.g, s.gamma) == 0.0);
}

TEST_CASE("malformed documents report pointer paths") {
    expect_error("[1,2]", "/");
    expect_error("this is not json", "/");
    expect_error(R"({"schema":"other/v9","period":1,"coefficients":{}})", "/schema");
    expect_error(R"({"schema":"periwave/problem/v1","coefficients":{}})", "/period");
    expect_error(R"({"schema":"periwave/problem/v1","period":0,"coefficients":{}})", "/period");
    expect_error(R"({"schema":"periwave/problem/v1","period":1,"truncation":-1,"coefficients":{}})",
                 "/truncation");
    expect_error(R"({"schema":"periwave/problem/v1","period":1,"coefficients":{"e":{}}})",
                 "/coefficients/e");
    expect_error(
        R"({"schema":"periwave/problem/v1","period":1,"coefficients":{"a":{"breakpoints":[0,0.5,1],"pieces":[[[1],[0]]]}}})",
        "/coefficients/a/pieces");
    expect_error(
        R"({"schema":"periwave/problem/v1","period":1,"coefficients":{"a":{"breakpoints":[0,1],"pieces":[[[1,2,3,4,5],[0]]]}}})",
        "/coefficients/a/pieces/0");
    expect_error(R"({"schema":"periwave/problem/v1","period":1,"coefficients":{},"grid":{"refinement":11}})",
                 "/grid/refinement");
    expect_error(
        R"({"schema":"periwave/problem/v1","period":1,"coefficients":{},"tolerances":{"iteration":0}})",
        "/tolerances/iteration");
    expect_error(
        R"({"schema":"periwave/problem/v1","period":1,"coefficients":{},"forcing":{"modes":{"1x":{}}}})",
        "/forcing/modes/1x");
    expect_error(
        R"({"schema":"periwave/problem/v1","period":1,"truncation":2,"coefficients":{},"forcing":{"modes":{"5":{}}}})",
        "/forcing/modes/5");
    expect_error(
        R"({"schema":"periwave/problem/v1","period":1,"truncation":2,"coefficients":{},"forcing":{"modes":{"1":{},"+1":{}}}})",
        "/forcing/modes/1");
    expect_error(
        R"({"schema":"periwave/problem/v1","period":1,"truncation":2,"coefficients":{},"forcing":{"samples":{"times":3}}})",
        "/forcing/samples/times");
    expect_error(
        R"({"schema":"periwave/problem/v1","period":1,"truncation":0,"coefficients":{},"forcing":{"samples":{"times":2,"f":[[1]]}}})",
        "/forcing/samples/f/0");
    expect_error(
        R"({"schema":"periwave/problem/v1","period":1,"coefficients":{},"forcing":{"modes":{},"samples":{"times":200}}})",
        "/forcing");

    CHECK_THROWS_AS(parse_document_file("/nonexistent/problem.json"), ParseError);

    // piece-count message names both counts
    try {
        parse_document_text(
            R"({"schema":"periwave/problem/v1","period":1,"coefficients":{"a":{"breakpoints":[0,0.5,1],"pieces":[[[1],[0]]]}}})");
    } catch (const ParseError& e) {
        const std::string what = e.what();
        CHECK(what.find("expected 2 pieces for 3 breakpoints, got 1") != std::string::npos);
    }
}

TEST_CASE("mode-keyed forcing builds fields and extends the grid") {
    ProblemDocument d = parse_document_text(R"({
        "schema": "periwave/problem/v1",
        "period": 1.0,
        "truncation": 2,
        "r0": [0.5, 0.0],
        "r1": [0.5, 0.0],
        "coefficients": {"a": {"breakpoints": [0, 1], "pieces": [[[1], []]]}},
        "forcing": {"modes": {"0": {"f": {"breakpoints": [0, 0.5, 1],
                                          "pieces": [[[2], [0]], [[0], [0]]]}}}}
    })");
    REQUIRE(d.modes.size() == 1);
    CHECK(d.modes[0].k == 0);

    ProblemSpec s = d.to_spec();
    CHECK(s.grid->nodes() == std::vector<double>{0.0, 0.5, 1.0}); // forcing breakpoint folded in
    CHECK(std::abs(s.f.mode(0)(0.25) - 2.0) < 1e-14);
    CHECK(std::abs(s.f.mode(0)(0.75)) < 1e-14);
    CHECK(s.f.mode(1).sup_abs() == 0.0);
    CHECK(s.g.mode(0).sup_abs() == 0.0); // entry without g defaults to zero
}

TEST_CASE("sampled forcing is Fourier-analyzed into the mode band") {
    // u(x, t_n) = (1 + x) cos(2 pi n / 3) at the two grid nodes
    const double c0 = 1.0, c1 = std::cos(2.0 * std::numbers::pi / 3.0),
                 c2 = std::cos(4.0 * std::numbers::pi / 3.0);
    json doc = {
        {"schema", "periwave/problem/v1"},
        {"period", 1.0},
        {"truncation", 1},
        {"coefficients", json::object()},
        {"forcing",
         {{"samples",
           {{"times", 3},
            {"f", {{c0, c1, c2}, {2.0 * c0, 2.0 * c1, 2.0 * c2}}}}}}},
    };
    ProblemDocument d = parse_document(doc);
    REQUIRE(d.samples.has_value());
    CHECK(d.samples->times == 3);

    ProblemSpec s = d.to_spec();
    CHECK(s.f.real_valued());
    CHECK(s.f.conjugate_symmetry_defect() < 1e-15);
    for (double x : {0.0, 0.5, 1.0}) {
        CHECK(std::abs(s.f.mode(1)(x) - 0.5 * (1.0 + x)) < 1e-14);
        CHECK(std::abs(s.f.mode(-1)(x) - 0.5 * (1.0 + x)) < 1e-14);
    }
    CHECK(s.f.mode(0).sup_abs() < 1e-14);
    CHECK(w_norm(s.g, s.g, 0.0) == 0.0); // absent block stays zero

    // wrong row count only surfaces when the grid is known
    json bad = doc;
    bad["forcing"]["samples"]["f"] = {{c0, c1, c2}};
    CHECK_THROWS_AS(parse_document(bad).to_spec(), ParseError);
}

TEST_CASE("serialize and parse are mutually inverse on documents") {
    const std::string modes_text = R"({
        "schema": "periwave/problem/v1",
        "period": 2.0,
        "truncation": 3,
        "gamma": 1.5,
        "r0": [0.4, -0.1],
        "r1": [0.0, 0.3],
        "coefficients": {
            "a": {"breakpoints": [0, 0.5, 1], "pieces": [[[1, 0.5], [0]], [[2], [0.25]]]},
            "b": {"breakpoints": [0, 1], "pieces": [[[0.1], [0]]]}
        },
        "grid": {"refinement": 1},
        "tolerances": {"iteration": 1e-9, "max_iterations": 50},
        "forcing": {"modes": {"-2": {"f": {"breakpoints": [0, 1], "pieces": [[[1], [1]]]}},
                               "0": {"g": {"breakpoints": [0, 1], "pieces": [[[0, 1], [0]]]}}}}
    })";
    json j1 = serialize_document(parse_document_text(modes_text));
    json j2 = serialize_document(parse_document(j1));
    CHECK(j1 == j2);
    CHECK(j1.dump() == j2.dump());
    CHECK(j1["truncation"] == 3);
    CHECK(j1["forcing"].contains("modes"));
    CHECK(j1["coefficients"].contains("c")); // implicit zeros made explicit
    CHECK(j1["tolerances"]["boundary"] == 1e-10);

    json sampled = {{"schema", "periwave/problem/v1"},
                    {"period", 1.0},
                    {"truncation", 1},
                    {"coefficients", json::object()},
                    {"forcing",
                     {{"samples", {{"times", 3}, {"f", {{1.0, json::array({0.5, -0.5}), 0.0}}}}}}}};
    json s1 = serialize_document(parse_document(sampled));
    json s2 = serialize_document(parse_document(s1));
    CHECK(s1 == s2);
    CHECK(s1["forcing"].contains("samples")); // sampled input round-trips as samples
}

TEST_CASE("with_truncation clamps and pads the mode band") {
    ProblemDocument d = parse_document_text(R"({
        "schema": "periwave/problem/v1",
        "period": 1.0,
        "truncation": 2,
        "r0": [0.5, 0], "r1": [0.5, 0],
        "coefficients": {},
        "forcing": {"modes": {
            "0":  {"f": {"breakpoints": [0, 1], "pieces": [[[1], [0]]]}},
            "2":  {"f": {"breakpoints": [0, 1], "pieces": [[[3], [0]]]}},
            "-2": {"g": {"breakpoints": [0, 1], "pieces": [[[2], [0]]]}}
        }}
    })");
    ProblemSpec s = d.to_spec();
    const double full = w_norm(s.f, s.g, s.gamma);

    ProblemSpec clamped = with_truncation(s, 1);
    CHECK(clamped.circle.truncation == 1);
    CHECK(std::abs(clamped.f.mode(0)(0.5) - 1.0) < 1e-14);
    CHECK(w_norm(clamped.f, clamped.g, clamped.gamma) < full); // band energy dropped

    ProblemSpec padded = with_truncation(s, 4);
    CHECK(padded.circle.truncation == 4);
    CHECK(std::abs(padded.f.mode(2)(0.5) - 3.0) < 1e-14);
    CHECK(padded.f.mode(4).sup_abs() == 0.0);
    CHECK(w_norm(padded.f, padded.g, padded.gamma) == Approx(full).epsilon(1e-14));
}

TEST_CASE("run_solve writes the full artifact set for a certified problem") {
    const fs::path dir = scratch_dir("ok");
    RunArtifact art = run_solve(certified_spec(), RunFlags{}, dir.string());
    CHECK(art.exit_code == 0);
    CHECK(art.status == "ok");

    REQUIRE(fs::exists(dir / "report.json"));
    json rep = json::parse(slurp(dir / "report.json"));
    CHECK(rep["schema"] == "periwave/report/v1");
    CHECK(rep["status"] == "ok");
    CHECK(rep["exit_code"] == 0);
    CHECK(rep["problem"]["truncation"] == 1);
    CHECK(rep["certificate"]["contraction"]["value"].get<double>() == Approx(0.1).epsilon(1e-12));
    CHECK(rep["solve"]["method"] == "neumann");
    CHECK(rep["solve"]["converged"] == true);
    CHECK(rep["solve"]["certified"] == true);
    CHECK(rep["solve"]["final_residual"].get<double>() < 1e-8);

    CHECK(first_line(dir / "modes.csv") == "k,x,re_u,im_u,re_v,im_v");
    CHECK(first_line(dir / "residuals.csv") == "k,res_u,res_v,res_bc");
    CHECK_FALSE(fs::exists(dir / "synth.csv")); // only on request

    RunFlags with_samples;
    with_samples.emit_samples = true;
    const fs::path dir2 = scratch_dir("ok-samples");
    run_solve(certified_spec(), with_samples, dir2.string());
    CHECK(first_line(dir2 / "synth.csv") == "t,x,re_u,im_u,re_v,im_v");
}

TEST_CASE("run_solve honours the harness switches") {
    SUBCASE("check-only stops before solving") {
        const fs::path dir = scratch_dir("check");
        RunFlags flags;
        flags.check_only = true;
        flags.seed = 17u;
        RunArtifact art = run_solve(certified_spec(), flags, dir.string());
        CHECK(art.exit_code == 0);
        CHECK(art.status == "checked");
        json rep = json::parse(slurp(dir / "report.json"));
        CHECK(rep.contains("certificate"));
        CHECK_FALSE(rep.contains("solve"));
        CHECK(rep["flags"]["seed"] == 17u);
        CHECK_FALSE(fs::exists(dir / "modes.csv"));
    }

    SUBCASE("oracle path cross-checks the iteration") {
        const fs::path dir = scratch_dir("oracle");
        RunFlags flags;
        flags.oracle = true;
        RunArtifact art = run_solve(certified_spec(), flags, dir.string());
        CHECK(art.exit_code == 0);
        json rep = json::parse(slurp(dir / "report.json"));
        CHECK(rep["solve"]["method"] == "oracle");
        CHECK(rep["solve"]["oracle_cross_discrepancy"].get<double>() < 1e-8);
        CHECK(fs::exists(dir / "modes.csv"));
    }

    SUBCASE("k_max override shrinks the band") {
        const fs::path dir = scratch_dir("kmax");
        RunFlags flags;
        flags.k_max = 0;
        RunArtifact art = run_solve(certified_spec(), flags, dir.string());
        CHECK(art.exit_code == 0);
        json rep = json::parse(slurp(dir / "report.json"));
        CHECK(rep["problem"]["truncation"] == 0);
        CHECK(rep["flags"]["k_max"] == 0);
    }

    SUBCASE("degenerate data exits 3 but still reports") {
        ProblemSpec s = certified_spec();
        s.r0 = 2.0; // |r0 r1| = 1 = exp(0)
        const fs::path dir = scratch_dir("degenerate");
        RunArtifact art = run_solve(s, RunFlags{}, dir.string());
        CHECK(art.exit_code == 3);
        CHECK(art.status == "degenerate");
        json rep = json::parse(slurp(dir / "report.json"));
        CHECK(rep["certificate"]["nondegenerate"]["pass"] == false);
        CHECK(rep.contains("error"));
        CHECK_FALSE(fs::exists(dir / "modes.csv"));
    }

    SUBCASE("budget exhaustion without certificate exits 4 with partial artifacts") {
        ProblemSpec s = certified_spec();
        s.b = PiecewiseCoefficient::constant(5.0);
        s.c = PiecewiseCoefficient::constant(5.0);
        RunFlags flags;
        flags.max_iter = 3;
        const fs::path dir = scratch_dir("diverged");
        RunArtifact art = run_solve(s, flags, dir.string());
        CHECK(art.exit_code == 4);
        CHECK(art.status == "uncertified-diverged");
        json rep = json::parse(slurp(dir / "report.json"));
        CHECK(rep["solve"]["converged"] == false);
        CHECK(rep["solve"]["iterations"] == 3);
        CHECK(rep.contains("error"));
        CHECK(fs::exists(dir / "modes.csv")); // last iterate still dumped
    }

    SUBCASE("loose certificate with convergence reports uncertified-converged") {
        ProblemSpec s = certified_spec();
        s.a = PiecewiseCoefficient::constant(2.0);
        s.d = PiecewiseCoefficient::constant(2.0);
        s.b = PiecewiseCoefficient::constant(0.1);
        s.c = PiecewiseCoefficient::constant(0.1);
        const fs::path dir = scratch_dir("uncertified");
        RunArtifact art = run_solve(s, RunFlags{}, dir.string());
        CHECK(art.exit_code == 0);
        CHECK(art.status == "uncertified-converged");
    }
}

TEST_CASE("artifacts are byte-for-byte deterministic") {
    const fs::path d1 = scratch_dir("det1"), d2 = scratch_dir("det2");
    RunFlags flags;
    flags.emit_samples = true;
    run_solve(certified_spec(), flags, d1.string());
    run_solve(certified_spec(), flags, d2.string());
    CHECK(slurp(d1 / "report.json") == slurp(d2 / "report.json"));
    CHECK(slurp(d1 / "modes.csv") == slurp(d2 / "modes.csv"));
    CHECK(slurp(d1 / "residuals.csv") == slurp(d2 / "residuals.csv"));
    CHECK(slurp(d1 / "synth.csv") == slurp(d2 / "synth.csv"));
}

TEST_CASE("hand-built linear solution is reproduced exactly") {
    // a=b=c=d=0, r0=r1=1/2: u=0.5+3.5x, v=1+x satisfies both reflections and
    // u'=f=3.5, v'=-g=1
    ProblemSpec s;
    s.r0 = 0.5;
    s.r1 = 0.5;
    s.circle = TimeCircle(1.0, 0);
    s.grid = make_grid(s.a, s.b, s.c, s.d);
    s.f = SpectralField(s.circle, s.grid);
    s.g = SpectralField(s.circle, s.grid);
    GridFunction f0 = GridFunction::interpolate(s.grid->nodes(), s.grid->rep_order(),
                                                [](double) { return Complex(3.5); });
    GridFunction g0 = GridFunction::interpolate(s.grid->nodes(), s.grid->rep_order(),
                                                [](double) { return Complex(-1.0); });
    ModeSolution sol = green_solve(make_mode_problem(s, 0, f0, g0));
    for (double x : {0.0, 0.25, 0.6, 1.0}) {
        CHECK(std::abs(sol.u(x) - Complex(0.5 + 3.5 * x)) < 1e-13);
        CHECK(std::abs(sol.v(x) - Complex(1.0 + x)) < 1e-13);
    }
}

TEST_CASE("manufactured solutions are recovered by the solver") {
    SUBCASE("decoupled template converges in one pass") {
        ProblemSpec tmpl;
        tmpl.a = PiecewiseCoefficient::constant(Complex(0.5, 0.3));
        tmpl.d = PiecewiseCoefficient::constant(Complex(-0.2, 0.1));
        tmpl.r0 = 0.4;
        tmpl.r1 = 0.3;
        tmpl.circle = TimeCircle(1.0, 2);
        tmpl.grid = make_grid(tmpl.a, tmpl.b, tmpl.c, tmpl.d);
        tmpl.f = SpectralField(tmpl.circle, tmpl.grid);
        tmpl.g = SpectralField(tmpl.circle, tmpl.grid);

        ManufacturedSummary sum = manufactured_test(tmpl, 1234u, 1e-9);
        CHECK(sum.pass);
        CHECK(sum.rel_error < 1e-9);
        CHECK(sum.iterations == 1);
        CHECK(sum.certified);
        CHECK(sum.truth_vnorm > 0.1);

        // same seed reproduces the exact run
        ManufacturedSummary again = manufactured_test(tmpl, 1234u, 1e-9);
        CHECK(again.rel_error == sum.rel_error);
    }

    SUBCASE("weakly coupled certified template meets the default budget") {
        ProblemSpec tmpl = certified_spec();
        tmpl.f = SpectralField(tmpl.circle, tmpl.grid); // forcing comes from the truth
        ManufacturedSummary sum = manufactured_test(tmpl, 77u, 1e-7);
        CHECK(sum.pass);
        CHECK(sum.certified);
        CHECK(sum.rel_error < 1e-7);
    }
}
