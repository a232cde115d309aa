#pragma once

#include <complex>
#include <span>
#include <vector>

// Chebyshev machinery on the reference interval [-1,1]. Everything works on
// plain coefficient vectors c such that f(s) = sum_k c[k] T_k(s); degree n
// means n+1 coefficients / n+1 Chebyshev-Lobatto points.

namespace periwave::cheb {

using Complex = std::complex<double>;

/// Chebyshev-Lobatto nodes of the given degree, ascending (-1 first, 1 last).
const std::vector<double>& nodes(int degree);

/// Values at nodes(degree) -> coefficients (DCT-I style, O(n^2) with cached
/// cosine tables; cell degrees stay small so this beats an FFT setup).
std::vector<Complex> vals_to_coeffs(std::span<const Complex> values);

/// Coefficients -> values at nodes(degree).
std::vector<Complex> coeffs_to_vals(std::span<const Complex> coeffs);

/// Clenshaw evaluation at s in [-1,1].
Complex eval(std::span<const Complex> coeffs, double s);

/// Coefficients of d/ds (degree drops by one; result padded to input size).
std::vector<Complex> derivative(std::span<const Complex> coeffs);

/// Coefficients of s -> int_{-1}^{s} f; one longer than the input.
std::vector<Complex> antiderivative(std::span<const Complex> coeffs);

/// int_{-1}^{1} f.
Complex definite_integral(std::span<const Complex> coeffs);

} // namespace periwave::cheb
