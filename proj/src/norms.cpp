#include "periwave/norms.hpp"

#include <cmath>
#include <stdexcept>

namespace periwave {

namespace {

double weight(int k, double gamma) {
    return std::pow(1.0 + double(k) * double(k), gamma);
}

void require_compatible(const SpectralField& u, const SpectralField& v) {
    if (!u.compatible(v))
        throw std::invalid_argument("norms: fields must share circle and grid");
}

} // namespace

double mode_weighted_sq(const SpectralField& h, double gamma) {
    const int K = h.truncation();
    double acc = 0.0; // ascending k: fixed summation order for reproducibility
    for (int k = -K; k <= K; ++k) acc += weight(k, gamma) * h.mode(k).l2_norm_sq();
    return h.circle().period * acc;
}

double w_norm(const SpectralField& u, const SpectralField& v, double gamma) {
    require_compatible(u, v);
    return std::sqrt(mode_weighted_sq(u, gamma) + mode_weighted_sq(v, gamma));
}

double v_norm(const SpectralField& u, const SpectralField& v, double gamma) {
    require_compatible(u, v);
    const int K = u.truncation();
    const double omega = u.circle().omega;
    double acc = 0.0;
    for (int k = -K; k <= K; ++k) {
        const Complex ikw(0.0, double(k) * omega);
        GridFunction cu = u.mode(k).derivative() + ikw * u.mode(k);
        GridFunction cv = v.mode(k).derivative() - ikw * v.mode(k);
        acc += weight(k, gamma) * (cu.l2_norm_sq() + cv.l2_norm_sq());
    }
    const double wsq = mode_weighted_sq(u, gamma) + mode_weighted_sq(v, gamma);
    return std::sqrt(wsq + u.circle().period * acc);
}

double trace_norm(const SpectralField& h, double x, double gamma) {
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("trace_norm: x outside [0,1]");
    const int K = h.truncation();
    double acc = 0.0;
    for (int k = -K; k <= K; ++k) acc += weight(k, gamma - 1.0) * std::norm(h.mode(k)(x));
    return std::sqrt(h.circle().period * acc);
}

} // namespace periwave
