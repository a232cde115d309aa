#include "periwave/problem_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "periwave/errors.hpp"

namespace periwave {

namespace {

using nlohmann::json;

double require_number(const json& node, const std::string& path) {
    if (!node.is_number()) throw ParseError(path, "expected a number");
    const double v = node.get<double>();
    if (!std::isfinite(v)) throw ParseError(path, "number must be finite");
    return v;
}

int require_int(const json& node, const std::string& path) {
    if (!node.is_number_integer()) throw ParseError(path, "expected an integer");
    return node.get<int>();
}

/// Complex entries come as [re, im]; plain numbers are accepted where a
/// real value is natural (sampled forcing).
Complex parse_complex(const json& node, const std::string& path, bool allow_real) {
    if (allow_real && node.is_number()) return Complex(require_number(node, path), 0.0);
    if (!node.is_array() || node.size() != 2)
        throw ParseError(path, "expected [re, im]");
    return Complex(require_number(node[0], path + "/0"), require_number(node[1], path + "/1"));
}

std::vector<double> parse_breakpoints(const json& node, const std::string& path) {
    if (!node.is_array() || node.size() < 2)
        throw ParseError(path, "expected an array of at least two breakpoints");
    std::vector<double> b;
    b.reserve(node.size());
    for (std::size_t i = 0; i < node.size(); ++i)
        b.push_back(require_number(node[i], path + "/" + std::to_string(i)));
    return b;
}

PiecewiseCoefficient parse_coefficient(const json& node, const std::string& path) {
    if (!node.is_object()) throw ParseError(path, "expected {breakpoints, pieces}");
    if (!node.contains("breakpoints")) throw ParseError(path + "/breakpoints", "missing");
    if (!node.contains("pieces")) throw ParseError(path + "/pieces", "missing");
    auto breaks = parse_breakpoints(node["breakpoints"], path + "/breakpoints");

    const json& pieces = node["pieces"];
    if (!pieces.is_array())
        throw ParseError(path + "/pieces", "expected an array of [re coeffs, im coeffs] pairs");
    if (pieces.size() + 1 != breaks.size())
        throw ParseError(path + "/pieces",
                         "expected " + std::to_string(breaks.size() - 1) + " pieces for " +
                             std::to_string(breaks.size()) + " breakpoints, got " +
                             std::to_string(pieces.size()));

    std::vector<std::vector<Complex>> polys;
    polys.reserve(pieces.size());
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const std::string ppath = path + "/pieces/" + std::to_string(i);
        const json& piece = pieces[i];
        if (!piece.is_array() || piece.size() != 2 || !piece[0].is_array() || !piece[1].is_array())
            throw ParseError(ppath, "expected [[re coeffs], [im coeffs]]");
        const auto& re = piece[0];
        const auto& im = piece[1];
        const std::size_t n = std::max(re.size(), im.size());
        if (n == 0 || n > 4)
            throw ParseError(ppath, "piece degree must be between 0 and 3");
        std::vector<Complex> poly(n, Complex(0.0, 0.0));
        for (std::size_t j = 0; j < re.size(); ++j)
            poly[j] += Complex(require_number(re[j], ppath + "/0/" + std::to_string(j)), 0.0);
        for (std::size_t j = 0; j < im.size(); ++j)
            poly[j] += Complex(0.0, require_number(im[j], ppath + "/1/" + std::to_string(j)));
        polys.push_back(std::move(poly));
    }
    try {
        return PiecewiseCoefficient(std::move(breaks), std::move(polys));
    } catch (const std::invalid_argument& e) {
        throw ParseError(path, e.what());
    }
}

json serialize_coefficient(const PiecewiseCoefficient& c) {
    json out;
    out["breakpoints"] = c.breakpoints();
    json pieces = json::array();
    for (const auto& poly : c.pieces()) {
        json re = json::array(), im = json::array();
        for (const Complex& z : poly) {
            re.push_back(z.real());
            im.push_back(z.imag());
        }
        pieces.push_back(json::array({re, im}));
    }
    out["pieces"] = pieces;
    return out;
}

std::vector<std::vector<Complex>> parse_sample_rows(const json& node, const std::string& path,
                                                    int times) {
    if (!node.is_array()) throw ParseError(path, "expected per-node sample rows");
    std::vector<std::vector<Complex>> rows;
    rows.reserve(node.size());
    for (std::size_t i = 0; i < node.size(); ++i) {
        const std::string rpath = path + "/" + std::to_string(i);
        const json& row = node[i];
        if (!row.is_array() || static_cast<int>(row.size()) != times)
            throw ParseError(rpath, "expected " + std::to_string(times) + " samples");
        std::vector<Complex> r;
        r.reserve(row.size());
        for (std::size_t j = 0; j < row.size(); ++j)
            r.push_back(parse_complex(row[j], rpath + "/" + std::to_string(j), true));
        rows.push_back(std::move(r));
    }
    return rows;
}

} // namespace

ProblemDocument parse_document(const json& doc) {
    if (!doc.is_object()) throw ParseError("/", "problem document must be a JSON object");
    if (!doc.contains("schema") || !doc["schema"].is_string() ||
        doc["schema"].get<std::string>() != kProblemSchema)
        throw ParseError("/schema", std::string("expected \"") + kProblemSchema + "\"");

    ProblemDocument d;
    if (!doc.contains("period")) throw ParseError("/period", "missing");
    d.period = require_number(doc["period"], "/period");
    if (!(d.period > 0.0)) throw ParseError("/period", "period must be positive");

    if (doc.contains("truncation")) {
        d.truncation = require_int(doc["truncation"], "/truncation");
        if (d.truncation < 0) throw ParseError("/truncation", "truncation must be >= 0");
    }
    if (doc.contains("gamma")) d.gamma = require_number(doc["gamma"], "/gamma");
    if (doc.contains("r0")) d.r0 = parse_complex(doc["r0"], "/r0", false);
    if (doc.contains("r1")) d.r1 = parse_complex(doc["r1"], "/r1", false);

    if (!doc.contains("coefficients") || !doc["coefficients"].is_object())
        throw ParseError("/coefficients", "missing coefficients object");
    const json& coefs = doc["coefficients"];
    for (const auto& item : coefs.items()) {
        const std::string& key = item.key();
        if (key != "a" && key != "b" && key != "c" && key != "d")
            throw ParseError("/coefficients/" + key, "unknown coefficient (expected a,b,c,d)");
    }
    auto coef_or_zero = [&](const char* name) {
        return coefs.contains(name)
                   ? parse_coefficient(coefs[name], std::string("/coefficients/") + name)
                   : PiecewiseCoefficient();
    };
    d.a = coef_or_zero("a");
    d.b = coef_or_zero("b");
    d.c = coef_or_zero("c");
    d.d = coef_or_zero("d");

    if (doc.contains("grid")) {
        const json& grid = doc["grid"];
        if (!grid.is_object()) throw ParseError("/grid", "expected {refinement}");
        if (grid.contains("refinement")) {
            d.refinement = require_int(grid["refinement"], "/grid/refinement");
            if (d.refinement < 0 || d.refinement > 10)
                throw ParseError("/grid/refinement", "refinement must be in [0, 10]");
        }
    }

    if (doc.contains("tolerances")) {
        const json& tol = doc["tolerances"];
        if (!tol.is_object()) throw ParseError("/tolerances", "expected an object");
        auto positive = [&](const char* name, double& slot) {
            if (!tol.contains(name)) return;
            slot = require_number(tol[name], std::string("/tolerances/") + name);
            if (!(slot > 0.0))
                throw ParseError(std::string("/tolerances/") + name, "must be positive");
        };
        positive("iteration", d.tolerances.iteration);
        positive("boundary", d.tolerances.boundary);
        positive("residual", d.tolerances.residual);
        if (tol.contains("max_iterations")) {
            d.tolerances.max_iterations = require_int(tol["max_iterations"], "/tolerances/max_iterations");
            if (d.tolerances.max_iterations < 1)
                throw ParseError("/tolerances/max_iterations", "must be >= 1");
        }
    }

    if (doc.contains("forcing")) {
        const json& forcing = doc["forcing"];
        if (!forcing.is_object()) throw ParseError("/forcing", "expected {modes} or {samples}");
        if (forcing.contains("modes") && forcing.contains("samples"))
            throw ParseError("/forcing", "modes and samples are mutually exclusive");
        if (forcing.contains("modes")) {
            const json& modes = forcing["modes"];
            if (!modes.is_object()) throw ParseError("/forcing/modes", "expected an object keyed by k");
            for (const auto& item : modes.items()) {
                const std::string mpath = "/forcing/modes/" + item.key();
                int k = 0;
                try {
                    std::size_t used = 0;
                    k = std::stoi(item.key(), &used);
                    if (used != item.key().size()) throw std::invalid_argument("trailing");
                } catch (const std::exception&) {
                    throw ParseError(mpath, "mode key must be an integer");
                }
                if (std::abs(k) > d.truncation)
                    throw ParseError(mpath, "mode outside the truncation band |k| <= " +
                                                std::to_string(d.truncation));
                const json& entry = item.value();
                if (!entry.is_object()) throw ParseError(mpath, "expected {f, g}");
                ForcingModeEntry fm;
                fm.k = k;
                if (entry.contains("f")) fm.f = parse_coefficient(entry["f"], mpath + "/f");
                if (entry.contains("g")) fm.g = parse_coefficient(entry["g"], mpath + "/g");
                d.modes.push_back(std::move(fm));
            }
            std::sort(d.modes.begin(), d.modes.end(),
                      [](const ForcingModeEntry& x, const ForcingModeEntry& y) { return x.k < y.k; });
            for (std::size_t i = 1; i < d.modes.size(); ++i)
                if (d.modes[i].k == d.modes[i - 1].k)
                    throw ParseError("/forcing/modes/" + std::to_string(d.modes[i].k),
                                     "duplicate mode key");
        } else if (forcing.contains("samples")) {
            const json& samples = forcing["samples"];
            if (!samples.is_object() || !samples.contains("times"))
                throw ParseError("/forcing/samples", "expected {times, f, g}");
            SampledForcing sf;
            sf.times = require_int(samples["times"], "/forcing/samples/times");
            if (sf.times < 2 * d.truncation + 1)
                throw ParseError("/forcing/samples/times",
                                 "need at least 2K+1 = " + std::to_string(2 * d.truncation + 1) +
                                     " samples per period");
            if (samples.contains("f"))
                sf.f = parse_sample_rows(samples["f"], "/forcing/samples/f", sf.times);
            if (samples.contains("g"))
                sf.g = parse_sample_rows(samples["g"], "/forcing/samples/g", sf.times);
            d.samples = std::move(sf);
        } else {
            throw ParseError("/forcing", "expected modes or samples");
        }
    }
    return d;
}

ProblemDocument parse_document_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("/", e.what());
    }
    return parse_document(doc);
}

ProblemDocument parse_document_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, "cannot open problem file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_document_text(buf.str());
}

ProblemSpec ProblemDocument::to_spec() const {
    ProblemSpec s;
    s.a = a;
    s.b = b;
    s.c = c;
    s.d = d;
    s.r0 = r0;
    s.r1 = r1;
    s.circle = TimeCircle(period, truncation);
    s.gamma = SobolevIndex(gamma).gamma;
    s.tolerances = tolerances;

    std::vector<std::vector<double>> extra;
    for (const auto& fm : modes) {
        extra.push_back(fm.f.breakpoints());
        extra.push_back(fm.g.breakpoints());
    }
    s.grid = make_grid(a, b, c, d, extra, refinement);

    if (samples) {
        const std::size_t nodes = s.grid->nodes().size();
        auto rows_ok = [&](const std::vector<std::vector<Complex>>& rows, const char* name) {
            if (!rows.empty() && rows.size() != nodes)
                throw ParseError(std::string("/forcing/samples/") + name,
                                 "expected one row per grid node (" + std::to_string(nodes) +
                                     " nodes), got " + std::to_string(rows.size()));
        };
        rows_ok(samples->f, "f");
        rows_ok(samples->g, "g");
        const std::vector<std::vector<Complex>> zero_rows(
            nodes, std::vector<Complex>(samples->times, Complex(0.0, 0.0)));
        s.f = analyze(samples->f.empty() ? zero_rows : samples->f, s.circle, s.grid);
        s.g = analyze(samples->g.empty() ? zero_rows : samples->g, s.circle, s.grid);
    } else {
        s.f = SpectralField(s.circle, s.grid);
        s.g = SpectralField(s.circle, s.grid);
        const auto& part = s.grid->nodes();
        const int order = s.grid->rep_order();
        for (const auto& fm : modes) {
            s.f.mode(fm.k) = GridFunction::from_piecewise(fm.f, part, order);
            s.g.mode(fm.k) = GridFunction::from_piecewise(fm.g, part, order);
        }
    }
    return s;
}

nlohmann::json serialize_document(const ProblemDocument& d) {
    json out;
    out["schema"] = kProblemSchema;
    out["period"] = d.period;
    out["truncation"] = d.truncation;
    out["gamma"] = d.gamma;
    out["r0"] = json::array({d.r0.real(), d.r0.imag()});
    out["r1"] = json::array({d.r1.real(), d.r1.imag()});
    out["coefficients"] = {{"a", serialize_coefficient(d.a)},
                           {"b", serialize_coefficient(d.b)},
                           {"c", serialize_coefficient(d.c)},
                           {"d", serialize_coefficient(d.d)}};
    out["grid"] = {{"refinement", d.refinement}};
    out["tolerances"] = {{"iteration", d.tolerances.iteration},
                         {"boundary", d.tolerances.boundary},
                         {"residual", d.tolerances.residual},
                         {"max_iterations", d.tolerances.max_iterations}};
    if (d.samples) {
        auto dump_rows = [](const std::vector<std::vector<Complex>>& rows) {
            json out_rows = json::array();
            for (const auto& row : rows) {
                json r = json::array();
                for (const Complex& z : row) {
                    if (z.imag() == 0.0)
                        r.push_back(z.real());
                    else
                        r.push_back(json::array({z.real(), z.imag()}));
                }
                out_rows.push_back(std::move(r));
            }
            return out_rows;
        };
        json samples = {{"times", d.samples->times}};
        if (!d.samples->f.empty()) samples["f"] = dump_rows(d.samples->f);
        if (!d.samples->g.empty()) samples["g"] = dump_rows(d.samples->g);
        out["forcing"] = {{"samples", samples}};
    } else if (!d.modes.empty()) {
        json modes;
        for (const auto& fm : d.modes) {
            modes[std::to_string(fm.k)] = {{"f", serialize_coefficient(fm.f)},
                                           {"g", serialize_coefficient(fm.g)}};
        }
        out["forcing"] = {{"modes", modes}};
    }
    return out;
}

ProblemSpec parse_problem(const std::string& path) {
    return parse_document_file(path).to_spec();
}

ProblemSpec with_truncation(const ProblemSpec& spec, int k_max) {
    if (k_max < 0) throw std::invalid_argument("k_max must be >= 0");
    if (k_max == spec.circle.truncation) return spec;
    ProblemSpec out = spec;
    out.circle = TimeCircle(spec.circle.period, k_max);
    out.f = SpectralField(out.circle, spec.grid, spec.f.real_valued());
    out.g = SpectralField(out.circle, spec.grid, spec.g.real_valued());
    const int keep = std::min(k_max, spec.circle.truncation);
    for (int k = -keep; k <= keep; ++k) {
        out.f.mode(k) = spec.f.mode(k);
        out.g.mode(k) = spec.g.mode(k);
    }
    return out;
}

} // namespace periwave
