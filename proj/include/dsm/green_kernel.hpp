#pragma once

#include "dsm/geometry.hpp"
#include "dsm/special_fn.hpp"

namespace dsm {

/// Outgoing fundamental solution of the Helmholtz operator.
///
/// dim 2: (i/4) H_0^(1)(k r).
/// dim 3: exp(i k r) / (4 pi k r). The extra 1/k relative to the textbook
/// kernel is intentional; it keeps the monopole correlation constant at 1.
/// Throws SingularityError when x == y.
Complex green(const WaveContext& ctx, const Point& x, const Point& y);

/// Far-field pattern of green(., y) in direction xhat.
Complex green_farfield(const WaveContext& ctx, const Direction& xhat, const Point& y);

/// C_N Im G(xp, xj): J_0(k r) in 2D, sin(k r)/(k r) in 3D; 1 at coincidence.
double scaled_im_green(const WaveContext& ctx, const Point& xp, const Point& xj);

/// The factor C_N with C_N Im G = scaled_im_green (4 in 2D, 4 pi in 3D).
double im_green_scale(const WaveContext& ctx);

/// Quadrature value of the monopole correlation
///   integral over S^{N-1} of G_inf(xhat, xj) conj(G_inf(xhat, xp)) ds(xhat).
///
/// 2D: nquad-point periodic trapezoid. 3D: nquad Gauss-Legendre nodes in
/// cos(polar angle) times nquad trapezoid nodes in azimuth.
/// Small nquad is accepted (the result is simply inaccurate); nquad < 1 throws.
Complex farfield_correlation(const WaveContext& ctx, const Point& xj, const Point& xp, int nquad);

/// The constant C with farfield_correlation(xj, xp) = C Im G(xp, xj).
///
/// Derived at coincidence from closed forms: |G_inf|^2 |S^{N-1}| divided by
/// lim_{r->0} Im G. Evaluates to 1/k in 2D and 1 in 3D.
double lemma_constant(const WaveContext& ctx);

}  // namespace dsm
