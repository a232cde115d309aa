#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace periwave {

/// Period lattice of the time variable: period T, fundamental frequency
/// omega = 2*pi/T, and the symmetric mode band |k| <= truncation.
struct TimeCircle {
    double period = 1.0;
    double omega = 2.0 * std::numbers::pi;
    int truncation = 0;

    TimeCircle() = default;
    TimeCircle(double T, int K) : period(T), omega(2.0 * std::numbers::pi / T), truncation(K) {
        if (!(T > 0.0) || !std::isfinite(T)) throw std::invalid_argument("period must be positive");
        if (K < 0) throw std::invalid_argument("truncation must be >= 0");
    }

    int mode_count() const { return 2 * truncation + 1; }

    friend bool operator==(const TimeCircle& a, const TimeCircle& b) {
        return a.period == b.period && a.truncation == b.truncation;
    }
};

/// Sobolev weight exponent; norms weight mode k by (1+k^2)^gamma.
struct SobolevIndex {
    double gamma = 0.0;
    SobolevIndex() = default;
    SobolevIndex(double g) : gamma(g) {
        if (!std::isfinite(g)) throw std::invalid_argument("sobolev index must be finite");
    }
};

} // namespace periwave
