#pragma once

#include <complex>
#include <vector>

namespace periwave {

using Complex = std::complex<double>;

/// Piecewise polynomial coefficient on [0,1]. Each piece stores monomial
/// coefficients in the local variable (x - left breakpoint); problem input
/// caps the degree at 3, antiderivatives raise it by one internally.
class PiecewiseCoefficient {
public:
    PiecewiseCoefficient(); // identically zero on a single piece
    PiecewiseCoefficient(std::vector<double> breakpoints,
                         std::vector<std::vector<Complex>> pieces);

    static PiecewiseCoefficient constant(Complex value);
    /// Step function: values[i] on [breakpoints[i], breakpoints[i+1]).
    static PiecewiseCoefficient steps(std::vector<double> breakpoints,
                                      std::vector<Complex> values);

    const std::vector<double>& breakpoints() const { return breaks_; }
    const std::vector<std::vector<Complex>>& pieces() const { return pieces_; }
    int piece_count() const { return static_cast<int>(pieces_.size()); }

    /// Value at x; breakpoints resolve to the right piece (left-closed), x=1
    /// to the last piece.
    Complex eval(double x) const;
    /// Evaluate the polynomial of a specific piece (no interval clamping).
    Complex eval_piece(int piece, double x) const;
    int piece_index(double x) const;

    bool is_identically_zero() const;

    /// Exact running integral x -> int_0^x; continuous, degree +1 per piece.
    PiecewiseCoefficient antiderivative() const;
    /// int_0^1 (exact).
    Complex integral() const;
    /// int_0^1 Re (exact); the nondegeneracy margin uses this.
    double integral_real() const;

    /// Certified essential sup of |coefficient|: dense per-piece Chebyshev
    /// sampling plus a derivative-bound slack, so the result is an upper
    /// bound; exact for piecewise-constant data.
    double ess_sup() const;

private:
    std::vector<double> breaks_;
    std::vector<std::vector<Complex>> pieces_; // local monomial coefficients
};

} // namespace periwave
