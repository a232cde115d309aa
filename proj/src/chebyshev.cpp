#include "periwave/chebyshev.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace periwave::cheb {

namespace {

struct DegreeTables {
    std::vector<double> nodes;  // ascending
    std::vector<double> cosine; // cosine[i*(n+1)+k] = cos(pi*i*k/n)
};

const DegreeTables& tables(int degree) {
    static std::mutex mu;
    static std::map<int, DegreeTables> cache;
    std::scoped_lock lock(mu);
    auto it = cache.find(degree);
    if (it != cache.end()) return it->second;

    if (degree < 0) throw std::invalid_argument("chebyshev degree must be >= 0");
    DegreeTables t;
    const int n = degree;
    t.nodes.resize(n + 1);
    if (n == 0) {
        t.nodes[0] = 0.0;
        t.cosine = {1.0};
    } else {
        for (int j = 0; j <= n; ++j)
            t.nodes[j] = -std::cos(std::numbers::pi * j / n);
        t.nodes[0] = -1.0;
        t.nodes[n] = 1.0;
        if (n % 2 == 0) t.nodes[n / 2] = 0.0;
        t.cosine.resize((n + 1) * (n + 1));
        for (int i = 0; i <= n; ++i)
            for (int k = 0; k <= n; ++k)
                t.cosine[i * (n + 1) + k] = std::cos(std::numbers::pi * i * k / n);
    }
    return cache.emplace(degree, std::move(t)).first->second;
}

} // namespace

const std::vector<double>& nodes(int degree) { return tables(degree).nodes; }

std::vector<Complex> vals_to_coeffs(std::span<const Complex> values) {
    const int n = static_cast<int>(values.size()) - 1;
    if (n < 0) throw std::invalid_argument("vals_to_coeffs: empty input");
    if (n == 0) return {values[0]};
    const auto& cosv = tables(n).cosine;
    std::vector<Complex> c(n + 1);
    // values are at ascending nodes; angle index i corresponds to node n-i.
    for (int k = 0; k <= n; ++k) {
        Complex acc = 0.5 * (values[n] + (k % 2 == 0 ? values[0] : -values[0]));
        for (int i = 1; i < n; ++i) acc += values[n - i] * cosv[i * (n + 1) + k];
        c[k] = acc * (2.0 / n);
        if (k == 0 || k == n) c[k] *= 0.5;
    }
    return c;
}

std::vector<Complex> coeffs_to_vals(std::span<const Complex> coeffs) {
    const int n = static_cast<int>(coeffs.size()) - 1;
    if (n < 0) throw std::invalid_argument("coeffs_to_vals: empty input");
    if (n == 0) return {coeffs[0]};
    const auto& cosv = tables(n).cosine;
    std::vector<Complex> v(n + 1);
    for (int j = 0; j <= n; ++j) {
        const int i = n - j; // angle index of node j
        Complex acc = 0.0;
        for (int k = 0; k <= n; ++k) acc += coeffs[k] * cosv[i * (n + 1) + k];
        v[j] = acc;
    }
    return v;
}

Complex eval(std::span<const Complex> coeffs, double s) {
    const int n = static_cast<int>(coeffs.size()) - 1;
    if (n < 0) return 0.0;
    Complex b1 = 0.0, b2 = 0.0;
    for (int k = n; k >= 1; --k) {
        Complex b0 = 2.0 * s * b1 - b2 + coeffs[k];
        b2 = b1;
        b1 = b0;
    }
    return s * b1 - b2 + coeffs[0];
}

std::vector<Complex> derivative(std::span<const Complex> coeffs) {
    const int n = static_cast<int>(coeffs.size()) - 1;
    std::vector<Complex> d(coeffs.size(), Complex(0.0));
    if (n <= 0) return d;
    // backward recurrence: d[k-1] = d[k+1] + 2k c[k]
    std::vector<Complex> b(n + 2, Complex(0.0));
    for (int k = n; k >= 1; --k) b[k - 1] = b[k + 1] + 2.0 * k * coeffs[k];
    b[0] *= 0.5;
    for (int k = 0; k < n; ++k) d[k] = b[k];
    return d;
}

std::vector<Complex> antiderivative(std::span<const Complex> coeffs) {
    const int n = static_cast<int>(coeffs.size()) - 1;
    std::vector<Complex> a(coeffs.size() + 1, Complex(0.0));
    if (n < 0) return a;
    auto c = [&](int k) { return k <= n ? coeffs[k] : Complex(0.0); };
    if (n >= 0) a[1] = c(0) - 0.5 * c(2);
    for (int k = 2; k <= n + 1; ++k) a[k] = (c(k - 1) - c(k + 1)) / (2.0 * k);
    Complex at_left = 0.0; // sum a[k] (-1)^k, k>=1
    for (int k = 1; k <= n + 1; ++k) at_left += (k % 2 == 0 ? a[k] : -a[k]);
    a[0] = -at_left;
    return a;
}

Complex definite_integral(std::span<const Complex> coeffs) {
    Complex acc = 0.0;
    for (int k = 0; k < static_cast<int>(coeffs.size()); k += 2)
        acc += coeffs[k] * (2.0 / (1.0 - double(k) * double(k)));
    return acc;
}

} // namespace periwave::cheb
