#pragma once

#include "periwave/spectral_field.hpp"

namespace periwave {

/// T * sum_k (1+k^2)^gamma ||h_k||_{L2}^2 for a single field.
double mode_weighted_sq(const SpectralField& h, double gamma);

/// Mode-weighted L2 norm of a pair:
/// ( T * sum_k (1+k^2)^gamma (||u_k||^2 + ||v_k||^2) )^{1/2}.
double w_norm(const SpectralField& u, const SpectralField& v, double gamma);

/// Adds the characteristic-derivative load to w_norm:
/// v_norm^2 = w_norm^2 + T * sum_k (1+k^2)^gamma
///            ( ||u_k' + ik omega u_k||^2 + ||v_k' - ik omega v_k||^2 ).
double v_norm(const SpectralField& u, const SpectralField& v, double gamma);

/// Boundary-trace strength at a point:
/// ( T * sum_k (1+k^2)^{gamma-1} |h_k(x)|^2 )^{1/2}.
double trace_norm(const SpectralField& h, double x, double gamma);

inline double w_norm(const FieldPair& s, double gamma) { return w_norm(s.u, s.v, gamma); }
inline double v_norm(const FieldPair& s, double gamma) { return v_norm(s.u, s.v, gamma); }

} // namespace periwave
