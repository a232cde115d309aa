#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "periwave/problem.hpp"

namespace periwave {

inline constexpr const char* kProblemSchema = "periwave/problem/v1";

struct ForcingModeEntry {
    int k = 0;
    PiecewiseCoefficient f, g;
};

/// Time-sampled forcing: `times` uniform samples over one period at every
/// grid node (row per node, t_n = n T / times); analyzed into modes when the
/// document is turned into a ProblemSpec.
struct SampledForcing {
    int times = 0;
    std::vector<std::vector<Complex>> f, g;
};

/// Validated, normalized image of a problem document. Keeps the forcing in
/// its input form so serialize(parse(text)) reproduces the document
/// field-for-field (numbers reformatted, defaults made explicit).
struct ProblemDocument {
    double period = 1.0;
    int truncation = 64;
    double gamma = 2.0;
    Complex r0 = 0.0, r1 = 0.0;
    PiecewiseCoefficient a, b, c, d;
    std::vector<ForcingModeEntry> modes; // ascending k, |k| <= truncation
    std::optional<SampledForcing> samples;
    int refinement = 0;
    Tolerances tolerances;

    /// Assemble the grid (coefficient plus forcing breakpoints, refined) and
    /// the forcing fields; sampled forcing is Fourier-analyzed here.
    ProblemSpec to_spec() const;
};

/// All parse/validation failures throw ParseError carrying a JSON-pointer
/// style path to the offending node.
ProblemDocument parse_document(const nlohmann::json& doc);
ProblemDocument parse_document_text(const std::string& text);
ProblemDocument parse_document_file(const std::string& path);

nlohmann::json serialize_document(const ProblemDocument& doc);

ProblemSpec parse_problem(const std::string& path);

/// CLI override: clamp/extend the mode band, dropping out-of-band forcing.
ProblemSpec with_truncation(const ProblemSpec& spec, int k_max);

} // namespace periwave
