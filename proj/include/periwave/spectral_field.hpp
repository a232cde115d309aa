#pragma once

#include <vector>

#include "periwave/grid.hpp"
#include "periwave/grid_function.hpp"
#include "periwave/time_circle.hpp"

namespace periwave {

/// Finite family of Fourier-in-time modes h_k, |k| <= truncation, each a
/// GridFunction on (a refinement of) the shared spatial grid. A scalar
/// space-time field u(x,t) is represented as sum_k h_k(x) e^{i k omega t}.
class SpectralField {
public:
    SpectralField() = default;
    SpectralField(TimeCircle circle, GridPtr grid, bool real_valued = false);

    const TimeCircle& circle() const { return circle_; }
    const GridPtr& grid() const { return grid_; }
    int truncation() const { return circle_.truncation; }
    bool real_valued() const { return real_valued_; }

    const GridFunction& mode(int k) const;
    GridFunction& mode(int k);

    bool compatible(const SpectralField& o) const {
        return circle_ == o.circle_ && grid_ && o.grid_ && *grid_ == *o.grid_;
    }

    /// Largest violation of h_{-k} = conj(h_k) over the representation
    /// nodes; meaningful for fields flagged real-valued.
    double conjugate_symmetry_defect() const;

    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator-=(const SpectralField& o);
    SpectralField& operator*=(Complex s);
    friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }

private:
    TimeCircle circle_;
    GridPtr grid_;
    std::vector<GridFunction> modes_; // index k + truncation
    bool real_valued_ = false;
};

/// (u,v) pair sharing circle and grid; solver state and forcing both use it.
struct FieldPair {
    SpectralField u, v;
};

/// Discrete Fourier analysis of per-node uniform time samples
/// (samples[node][n], n = 0..N-1, t_n = n T / N). Requires N >= 2K+1 so the
/// band |k| <= K is alias-free; between nodes each mode is the local cubic
/// through the nearest node values.
SpectralField analyze(const std::vector<std::vector<Complex>>& samples,
                      const TimeCircle& circle, const GridPtr& grid);

/// Evaluate the field at the grid nodes and nt uniform times (t_n = n T / nt).
std::vector<std::vector<Complex>> synthesize(const SpectralField& field, int nt);

/// Same, at arbitrary x positions.
std::vector<std::vector<Complex>> synthesize_at(const SpectralField& field,
                                                const std::vector<double>& xs, int nt);

} // namespace periwave
