#include "periwave/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace periwave {

SpectralField::SpectralField(TimeCircle circle, GridPtr grid, bool real_valued)
    : circle_(circle), grid_(std::move(grid)), real_valued_(real_valued) {
    if (!grid_) throw std::invalid_argument("spectral field: null grid");
    modes_.assign(circle_.mode_count(), GridFunction(grid_->nodes(), grid_->rep_order()));
}

const GridFunction& SpectralField::mode(int k) const {
    if (std::abs(k) > truncation()) throw std::out_of_range("mode index beyond truncation");
    return modes_[k + truncation()];
}

GridFunction& SpectralField::mode(int k) {
    if (std::abs(k) > truncation()) throw std::out_of_range("mode index beyond truncation");
    return modes_[k + truncation()];
}

double SpectralField::conjugate_symmetry_defect() const {
    double worst = 0.0;
    for (int k = 0; k <= truncation(); ++k) {
        const auto& hp = mode(k);
        const auto& hm = mode(-k);
        for (double x : grid_->nodes())
            worst = std::max(worst, std::abs(hm(x) - std::conj(hp(x))));
    }
    return worst;
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    if (!compatible(o)) throw std::invalid_argument("field arithmetic: incompatible layout");
    for (size_t i = 0; i < modes_.size(); ++i) modes_[i] += o.modes_[i];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
    if (!compatible(o)) throw std::invalid_argument("field arithmetic: incompatible layout");
    for (size_t i = 0; i < modes_.size(); ++i) modes_[i] -= o.modes_[i];
    return *this;
}

SpectralField& SpectralField::operator*=(Complex s) {
    for (auto& m : modes_) m *= s;
    return *this;
}

namespace {

/// Per-cell interpolant through node values: the polynomial through the
/// <=4 nearest nodes, restricted to the cell. Continuous across nodes.
GridFunction from_node_values(const GridPtr& grid, const std::vector<Complex>& nv) {
    const auto& nodes = grid->nodes();
    const int m = static_cast<int>(nodes.size());
    return GridFunction::interpolate(nodes, grid->rep_order(), [&](double x) {
        auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
        int cell = std::clamp(int(it - nodes.begin()) - 1, 0, m - 2);
        int lo = std::clamp(cell - 1, 0, std::max(0, m - 4));
        int hi = std::min(m - 1, lo + 3);
        Complex acc = 0.0;
        for (int i = lo; i <= hi; ++i) {
            double w = 1.0;
            for (int j = lo; j <= hi; ++j)
                if (j != i) w *= (x - nodes[j]) / (nodes[i] - nodes[j]);
            acc += w * nv[i];
        }
        return acc;
    });
}

} // namespace

SpectralField analyze(const std::vector<std::vector<Complex>>& samples,
                      const TimeCircle& circle, const GridPtr& grid) {
    const auto& nodes = grid->nodes();
    if (samples.size() != nodes.size())
        throw std::invalid_argument("analyze: one sample row per grid node required");
    const int N = samples.empty() ? 0 : static_cast<int>(samples[0].size());
    if (N < circle.mode_count())
        throw std::invalid_argument("analyze: need at least 2K+1 time samples");
    for (const auto& row : samples)
        if (static_cast<int>(row.size()) != N)
            throw std::invalid_argument("analyze: ragged sample rows");

    bool looks_real = true;
    for (const auto& row : samples)
        for (auto v : row)
            if (v.imag() != 0.0) { looks_real = false; break; }

    SpectralField out(circle, grid, looks_real);
    const int K = circle.truncation;
    std::vector<Complex> nv(nodes.size());
    for (int k = -K; k <= K; ++k) {
        for (size_t j = 0; j < nodes.size(); ++j) {
            Complex acc = 0.0;
            for (int n = 0; n < N; ++n) {
                const double phase = -2.0 * std::numbers::pi * double(k) * double(n) / double(N);
                acc += samples[j][n] * Complex(std::cos(phase), std::sin(phase));
            }
            nv[j] = acc / double(N);
        }
        out.mode(k) = from_node_values(grid, nv);
    }
    return out;
}

std::vector<std::vector<Complex>> synthesize_at(const SpectralField& field,
                                                const std::vector<double>& xs, int nt) {
    if (nt < 1) throw std::invalid_argument("synthesize: need at least one time sample");
    const int K = field.truncation();
    std::vector<std::vector<Complex>> out(xs.size(), std::vector<Complex>(nt, Complex(0.0)));
    for (size_t j = 0; j < xs.size(); ++j) {
        for (int k = -K; k <= K; ++k) {
            const Complex hk = field.mode(k)(xs[j]);
            for (int n = 0; n < nt; ++n) {
                const double phase = 2.0 * std::numbers::pi * double(k) * double(n) / double(nt);
                out[j][n] += hk * Complex(std::cos(phase), std::sin(phase));
            }
        }
    }
    return out;
}

std::vector<std::vector<Complex>> synthesize(const SpectralField& field, int nt) {
    return synthesize_at(field, field.grid()->nodes(), nt);
}

} // namespace periwave
