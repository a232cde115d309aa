#pragma once

#include <optional>
#include <string>
#include <vector>

#include "periwave/problem.hpp"

namespace periwave {

struct NondegeneracyResult {
    bool pass = false;
    double margin = 0.0;    // | |r0 r1| - exp(int Re(a+d)) |
    double reflection = 0.0; // |r0 r1|
    double dissipation = 0.0; // exp(int Re(a+d))
};

/// Scan result of one exponent-pair condition. `pass` iff both margins are
/// positive at the best grid point; margins are always reported.
struct CoefScan {
    bool applicable = true;
    bool pass = false;
    double p = 0.0, q = 0.0;
    double margin1 = 0.0, margin2 = 0.0;
    std::string note;
};

struct CoefWitness {
    double p = 0.0, q = 0.0;
    double margin1 = 0.0, margin2 = 0.0;
};

/// |r0 r1| vs exp(int_0^1 Re(a+d)): the two sides must differ (relative
/// floor 1e-12), otherwise the per-mode boundary determinants may degenerate.
NondegeneracyResult check_nondegeneracy(const ProblemSpec& spec);

/// Exponent grid searched for (p,q): {-2, -1.75, ..., 2}. The scan then
/// refines around the best point (5x5 neighbourhood, step halved, 3 rounds),
/// breaking ties toward the lexicographically smallest pair.
std::vector<double> default_exponent_grid();

/// Dissipation-dominance condition (damping case): exists (p,q) with
///   ess-inf [ 2 Re a - |b|^{2p} - |c|^{2q} ] > 0  and
///   ess-inf [ 2 Re d - |b|^{2(1-p)} - |c|^{2(1-q)} ] > 0.
/// Identically-zero coefficients drop their term; pointwise zeros with a
/// nonpositive exponent disqualify the exponent pair.
std::optional<CoefWitness> check_coef_plus(const ProblemSpec& spec);
std::optional<CoefWitness> check_coef_plus(const ProblemSpec& spec,
                                           const std::vector<double>& p_grid,
                                           const std::vector<double>& q_grid);
CoefScan scan_coef_plus(const ProblemSpec& spec);
CoefScan scan_coef_plus(const ProblemSpec& spec,
                        const std::vector<double>& p_grid,
                        const std::vector<double>& q_grid);

/// Amplification-case counterpart (m in {0,1} selects which side carries
/// the reflection-loss credit 2 ln(1/|r0 r1|)):
///   ess-inf [ -2 Re a - |b/r0|^{2p} - |c/r1|^{2q} ] + 2(1-m) ln(1/|r0 r1|) > 0,
///   ess-inf [ -2 Re d - |b/r0|^{2(1-p)} - |c/r1|^{2(1-q)} ] + 2m ln(1/|r0 r1|) > 0.
/// Requires r0 r1 != 0 (throws ConditionInapplicable otherwise).
std::optional<CoefWitness> check_coef_minus(const ProblemSpec& spec, int m);
std::optional<CoefWitness> check_coef_minus(const ProblemSpec& spec, int m,
                                            const std::vector<double>& p_grid,
                                            const std::vector<double>& q_grid);
CoefScan scan_coef_minus(const ProblemSpec& spec, int m);
CoefScan scan_coef_minus(const ProblemSpec& spec, int m,
                         const std::vector<double>& p_grid,
                         const std::vector<double>& q_grid);

struct ContractionResult {
    bool defined = false;
    bool pass = false;
    double value = 0.0;
};

struct CertificateReport {
    NondegeneracyResult nondegenerate;
    bool reflections_admissible = false; // |r0| < 1 and |r1| < 1
    CoefScan coef_plus;
    CoefScan coef_minus_m0;
    CoefScan coef_minus_m1;
    ContractionResult contraction;
    std::vector<std::string> applicable_theorems;
};

/// Run every check and tag the theorems whose hypotheses hold:
///  - "uniqueness+apriori" needs admissible reflections plus one coefficient
///    condition;
///  - "existence+neumann" needs nondegeneracy plus a contraction bound < 1.
CertificateReport assemble_report(const ProblemSpec& spec);

} // namespace periwave
