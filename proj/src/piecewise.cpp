#include "periwave/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace periwave {

namespace {

Complex eval_local(const std::vector<Complex>& poly, double t) {
    Complex acc = 0.0;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * t + *it;
    return acc;
}

} // namespace

PiecewiseCoefficient::PiecewiseCoefficient()
    : breaks_{0.0, 1.0}, pieces_{{Complex(0.0)}} {}

PiecewiseCoefficient::PiecewiseCoefficient(std::vector<double> breakpoints,
                                           std::vector<std::vector<Complex>> pieces)
    : breaks_(std::move(breakpoints)), pieces_(std::move(pieces)) {
    if (breaks_.size() < 2) throw std::invalid_argument("piecewise: need at least 2 breakpoints");
    if (pieces_.size() + 1 != breaks_.size())
        throw std::invalid_argument("piecewise: piece count must be breakpoint count - 1");
    if (breaks_.front() != 0.0 || breaks_.back() != 1.0)
        throw std::invalid_argument("piecewise: breakpoints must start at 0 and end at 1");
    for (size_t i = 0; i + 1 < breaks_.size(); ++i)
        if (!(breaks_[i] < breaks_[i + 1]))
            throw std::invalid_argument("piecewise: breakpoints must be strictly increasing");
    for (auto& p : pieces_)
        if (p.empty()) p = {Complex(0.0)};
}

PiecewiseCoefficient PiecewiseCoefficient::constant(Complex value) {
    return PiecewiseCoefficient({0.0, 1.0}, {{value}});
}

PiecewiseCoefficient PiecewiseCoefficient::steps(std::vector<double> breakpoints,
                                                 std::vector<Complex> values) {
    std::vector<std::vector<Complex>> pieces;
    pieces.reserve(values.size());
    for (auto v : values) pieces.push_back({v});
    return PiecewiseCoefficient(std::move(breakpoints), std::move(pieces));
}

int PiecewiseCoefficient::piece_index(double x) const {
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
    int idx = static_cast<int>(it - breaks_.begin()) - 1;
    return std::clamp(idx, 0, piece_count() - 1);
}

Complex PiecewiseCoefficient::eval(double x) const {
    const int i = piece_index(x);
    return eval_local(pieces_[i], x - breaks_[i]);
}

Complex PiecewiseCoefficient::eval_piece(int piece, double x) const {
    return eval_local(pieces_[piece], x - breaks_[piece]);
}

bool PiecewiseCoefficient::is_identically_zero() const {
    for (const auto& p : pieces_)
        for (auto c : p)
            if (c != Complex(0.0)) return false;
    return true;
}

PiecewiseCoefficient PiecewiseCoefficient::antiderivative() const {
    std::vector<std::vector<Complex>> out;
    out.reserve(pieces_.size());
    Complex running = 0.0;
    for (size_t i = 0; i < pieces_.size(); ++i) {
        const auto& p = pieces_[i];
        std::vector<Complex> q(p.size() + 1, Complex(0.0));
        q[0] = running;
        for (size_t j = 0; j < p.size(); ++j) q[j + 1] = p[j] / double(j + 1);
        const double w = breaks_[i + 1] - breaks_[i];
        running = eval_local(q, w);
        out.push_back(std::move(q));
    }
    return PiecewiseCoefficient(breaks_, std::move(out));
}

Complex PiecewiseCoefficient::integral() const {
    Complex acc = 0.0;
    for (size_t i = 0; i < pieces_.size(); ++i) {
        const double w = breaks_[i + 1] - breaks_[i];
        double wp = w;
        for (size_t j = 0; j < pieces_[i].size(); ++j) {
            acc += pieces_[i][j] * (wp / double(j + 1));
            wp *= w;
        }
    }
    return acc;
}

double PiecewiseCoefficient::integral_real() const { return integral().real(); }

double PiecewiseCoefficient::ess_sup() const {
    double best = 0.0;
    constexpr int kSamples = 129;
    for (size_t i = 0; i < pieces_.size(); ++i) {
        const auto& p = pieces_[i];
        const double w = breaks_[i + 1] - breaks_[i];
        // Lipschitz bound for |p| on the piece: sup |p'| via monomial bound.
        double lip = 0.0, wp = 1.0;
        for (size_t j = 1; j < p.size(); ++j) {
            lip += double(j) * std::abs(p[j]) * wp;
            wp *= w;
        }
        double piece_max = 0.0, max_gap = 0.0, prev_t = 0.0;
        for (int s = 0; s <= kSamples; ++s) {
            const double t =
                0.5 * w * (1.0 - std::cos(std::numbers::pi * s / kSamples));
            piece_max = std::max(piece_max, std::abs(eval_local(p, t)));
            if (s > 0) max_gap = std::max(max_gap, t - prev_t);
            prev_t = t;
        }
        best = std::max(best, piece_max + 0.5 * lip * max_gap);
    }
    return best;
}

} // namespace periwave
