#include "dsm/green_kernel.hpp"

#include <cmath>

#include "dsm/error.hpp"
#include "dsm/quadrature.hpp"

namespace dsm {

namespace {

void check_dim(const WaveContext& ctx, const Point& p) {
    if (p.dim != ctx.dim()) throw DomainError("point dimension does not match the wave context");
}

/// Modulus of the far-field prefactor: 1/sqrt(8 k pi) in 2D, 1/(4 pi) in 3D.
double farfield_prefactor_modulus(const WaveContext& ctx) {
    return ctx.dim() == 2 ? 1.0 / std::sqrt(8.0 * ctx.k() * kPi) : 1.0 / (4.0 * kPi);
}

double sphere_measure(int dim) { return dim == 2 ? 2.0 * kPi : 4.0 * kPi; }

}  // namespace

Complex green(const WaveContext& ctx, const Point& x, const Point& y) {
    check_dim(ctx, x);
    check_dim(ctx, y);
    const double r = distance(x, y);
    if (r == 0.0) throw SingularityError("green: coincident source and observation points");
    const double kr = ctx.k() * r;
    if (ctx.dim() == 2) {
        // (i/4)(J0 + i Y0)
        const CylinderPair p = bessel_jy01(kr);
        return {-0.25 * p.y0, 0.25 * p.j0};
    }
    return std::exp(kI * kr) / (4.0 * kPi * kr);
}

Complex green_farfield(const WaveContext& ctx, const Direction& xhat, const Point& y) {
    check_dim(ctx, y);
    if (xhat.dim() != ctx.dim()) throw DomainError("direction dimension does not match the wave context");
    const Complex phase = std::exp(-kI * (ctx.k() * dot(xhat.vec(), y)));
    if (ctx.dim() == 2) {
        return std::polar(farfield_prefactor_modulus(ctx), kPi / 4.0) * phase;
    }
    return farfield_prefactor_modulus(ctx) * phase;
}

double scaled_im_green(const WaveContext& ctx, const Point& xp, const Point& xj) {
    check_dim(ctx, xp);
    check_dim(ctx, xj);
    const double kr = ctx.k() * distance(xp, xj);
    return ctx.dim() == 2 ? bessel_j(0, kr) : spherical_j0(kr);
}

double im_green_scale(const WaveContext& ctx) { return ctx.dim() == 2 ? 4.0 : 4.0 * kPi; }

Complex farfield_correlation(const WaveContext& ctx, const Point& xj, const Point& xp, int nquad) {
    check_dim(ctx, xj);
    check_dim(ctx, xp);
    if (nquad < 1) throw DomainError("farfield_correlation: nquad must be positive");

    Complex sum{0.0, 0.0};
    if (ctx.dim() == 2) {
        const double step = 2.0 * kPi / nquad;
        for (int q = 0; q < nquad; ++q) {
            const Direction xhat = Direction::from_angle(q * step);
            sum += green_farfield(ctx, xhat, xj) * std::conj(green_farfield(ctx, xhat, xp));
        }
        return sum * step;
    }

    const QuadratureRule polar = gauss_legendre(nquad);
    const double step = 2.0 * kPi / nquad;
    for (int i = 0; i < nquad; ++i) {
        const double t = polar.nodes[i];
        const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
        Complex ring{0.0, 0.0};
        for (int q = 0; q < nquad; ++q) {
            const double phi = q * step;
            const Point v = Point::xyz(s * std::cos(phi), s * std::sin(phi), t);
            const Direction xhat = Direction::normalized(v);
            ring += green_farfield(ctx, xhat, xj) * std::conj(green_farfield(ctx, xhat, xp));
        }
        sum += polar.weights[i] * ring;
    }
    return sum * step;
}

double lemma_constant(const WaveContext& ctx) {
    // At xj = xp the integrand is the constant |G_inf|^2.
    const double a = farfield_prefactor_modulus(ctx);
    const double correlation_at_coincidence = a * a * sphere_measure(ctx.dim());
    // lim_{r->0} Im G = lim C_N^{-1} scaled_im_green = 1 / C_N.
    const double im_green_at_coincidence = 1.0 / im_green_scale(ctx);
    return correlation_at_coincidence / im_green_at_coincidence;
}

}  // namespace dsm
