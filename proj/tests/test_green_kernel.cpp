#include <doctest.h>

#include <cmath>

#include "dsm/error.hpp"
#include "dsm/geometry.hpp"
#include "dsm/green_kernel.hpp"
#include "dsm/quadrature.hpp"
#include "support.hpp"

using namespace dsm;

namespace {

const WaveContext k2d = WaveContext::unit_wavelength(2);
const WaveContext k3d = WaveContext::unit_wavelength(3);
constexpr double kJ0Zero = 2.404825557695773;

Point random_point(testing::Gen& g, int dim, double half_width) {
    if (dim == 2) return Point::xy(g.uniform(-half_width, half_width), g.uniform(-half_width, half_width));
    return Point::xyz(g.uniform(-half_width, half_width), g.uniform(-half_width, half_width),
                      g.uniform(-half_width, half_width));
}

}  // namespace

TEST_CASE("WaveContext validation") {
    CHECK(k2d.k() == doctest::Approx(2.0 * kPi));
    CHECK(k2d.wavelength() == doctest::Approx(1.0));
    CHECK_THROWS_AS(WaveContext(0.0, 2), DomainError);
    CHECK_THROWS_AS(WaveContext(1.0, 4), DomainError);
}

TEST_CASE("Direction enforces unit length") {
    CHECK_NOTHROW(Direction(Point::xy(1.0, 0.0)));
    CHECK_THROWS_AS(Direction(Point::xy(1.0, 1.0)), DomainError);
    CHECK_THROWS_AS(Direction::normalized(Point::xy(0.0, 0.0)), DomainError);
    const Direction d = Direction::from_degrees(90.0);
    CHECK(d[0] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(d[1] == doctest::Approx(1.0));
    CHECK(Direction::from_angle(0.3).angle() == doctest::Approx(0.3));
}

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
    const QuadratureRule r = gauss_legendre(8);
    for (int p = 0; p <= 15; ++p) {
        double s = 0.0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], p);
        const double exact = (p % 2) ? 0.0 : 2.0 / (p + 1);
        CHECK(s == doctest::Approx(exact).epsilon(1e-14));
    }
}

TEST_CASE("green in two dimensions") {
    for (double r : {0.05, 0.38, 1.0, 3.7}) {
        const Complex g = green(k2d, Point::xy(0.2, -0.1), Point::xy(0.2 + r, -0.1));
        CHECK(g.imag() == doctest::Approx(bessel_j(0, 2.0 * kPi * r) / 4.0).epsilon(1e-14));
        CHECK(g.real() == doctest::Approx(-bessel_y(0, 2.0 * kPi * r) / 4.0).epsilon(1e-14));
    }
    CHECK_THROWS_AS(green(k2d, Point::xy(1.0, 2.0), Point::xy(1.0, 2.0)), SingularityError);
    CHECK_THROWS_AS(green(k2d, Point::xy(1.0, 2.0), Point::xyz(1.0, 2.0, 0.0)), DomainError);
}

TEST_CASE("green in three dimensions tends to 1/(4 pi) in imaginary part") {
    const Complex g = green(k3d, Point::xyz(0, 0, 0), Point::xyz(1e-7, 0, 0));
    CHECK(g.imag() == doctest::Approx(1.0 / (4.0 * kPi)).epsilon(1e-10));
    const Complex h = green(k3d, Point::xyz(0, 0, 0), Point::xyz(0.3, 0.4, 0));
    const double kr = 2.0 * kPi * 0.5;
    CHECK(std::abs(h - std::exp(kI * kr) / (4.0 * kPi * kr)) <= 1e-15);
}

TEST_CASE("property: reciprocity is exact") {
    testing::for_all(21, 1000, [](testing::Gen& g) {
        const int dim = g.integer(2, 3);
        const WaveContext& ctx = dim == 2 ? k2d : k3d;
        const Point x = random_point(g, dim, 3.0);
        const Point y = random_point(g, dim, 3.0);
        CHECK(green(ctx, x, y) == green(ctx, y, x));
    });
}

TEST_CASE("green_farfield modulus and phase") {
    const Direction xhat = Direction::from_angle(1.1);
    const Complex g = green_farfield(k2d, xhat, Point::xy(0.3, -0.8));
    CHECK(std::abs(g) == doctest::Approx(1.0 / (4.0 * kPi)).epsilon(1e-14));
    const Complex at_origin = green_farfield(k2d, xhat, Point::xy(0.0, 0.0));
    const Complex expected = std::polar(1.0 / std::sqrt(8.0 * 2.0 * kPi * kPi), kPi / 4.0);
    CHECK(std::abs(at_origin - expected) <= 1e-16);
    const Direction x3 = Direction::normalized(Point::xyz(1.0, 2.0, -0.5));
    CHECK(std::abs(green_farfield(k3d, x3, Point::xyz(0.4, 0.1, 0.9))) == doctest::Approx(1.0 / (4.0 * kPi)));
}

TEST_CASE("green_farfield is the asymptotic amplitude of green") {
    // G(x, y) ~ e^{ikr}/sqrt(r) G_inf(xhat, y) in 2D, e^{ikr}/r G_inf in 3D.
    const Point y2 = Point::xy(0.3, -0.2);
    const Direction xhat2 = Direction::from_angle(0.7);
    const double r = 4000.0;
    const Complex g2 = green(k2d, r * xhat2.vec(), y2) * std::sqrt(r) / std::exp(kI * (k2d.k() * r));
    CHECK(std::abs(g2 - green_farfield(k2d, xhat2, y2)) <= 1e-3 * std::abs(g2));

    const Point y3 = Point::xyz(0.3, -0.2, 0.1);
    const Direction xhat3 = Direction::normalized(Point::xyz(1.0, 0.5, 0.2));
    // The 3D kernel carries an extra 1/k, so the far field of green is G_inf / k.
    const Complex g3 = green(k3d, r * xhat3.vec(), y3) * r / std::exp(kI * (k3d.k() * r));
    CHECK(std::abs(g3 - green_farfield(k3d, xhat3, y3) / k3d.k()) <= 1e-3 * std::abs(g3));
}

TEST_CASE("scaled_im_green") {
    CHECK(scaled_im_green(k2d, Point::xy(0.4, 0.4), Point::xy(0.4, 0.4)) == 1.0);
    CHECK(scaled_im_green(k3d, Point::xyz(0, 0, 1), Point::xyz(0, 0, 1)) == 1.0);
    const double r0 = kJ0Zero / (2.0 * kPi);
    CHECK(std::abs(scaled_im_green(k2d, Point::xy(0, 0), Point::xy(r0, 0))) <= 1e-9);
    CHECK(std::abs(scaled_im_green(k3d, Point::xyz(0, 0, 0), Point::xyz(0, 0.5, 0))) <= 1e-15);
    CHECK(im_green_scale(k2d) == 4.0);
    CHECK(im_green_scale(k3d) == doctest::Approx(4.0 * kPi));
}

TEST_CASE("property: scaled_im_green equals C_N Im G and is bounded by 1") {
    testing::for_all(22, 500, [](testing::Gen& g) {
        const int dim = g.integer(2, 3);
        const WaveContext& ctx = dim == 2 ? k2d : k3d;
        const Point x = random_point(g, dim, 2.0);
        const Point y = random_point(g, dim, 2.0);
        const double s = scaled_im_green(ctx, x, y);
        CHECK(std::abs(s) < 1.0);
        CHECK(s == doctest::Approx(im_green_scale(ctx) * green(ctx, x, y).imag()).epsilon(1e-12));
    });
}

TEST_CASE("farfield_correlation at coincidence") {
    const Complex c2 = farfield_correlation(k2d, Point::xy(0.3, 0.1), Point::xy(0.3, 0.1), 256);
    CHECK(std::abs(c2 - 1.0 / (8.0 * kPi)) <= 1e-12);
    const Complex c3 = farfield_correlation(k3d, Point::xyz(0.3, 0.1, 0), Point::xyz(0.3, 0.1, 0), 64);
    CHECK(std::abs(c3 - 1.0 / (4.0 * kPi)) <= 1e-10);
}

TEST_CASE("farfield_correlation vanishes at the first J0 zero") {
    const double r0 = kJ0Zero / (2.0 * kPi);
    const Complex c = farfield_correlation(k2d, Point::xy(r0, 0.0), Point::xy(0.0, 0.0), 512);
    CHECK(std::abs(c) <= 1e-8);
    CHECK_THROWS_AS(farfield_correlation(k2d, Point::xy(0, 0), Point::xy(1, 0), 0), DomainError);
    CHECK_NOTHROW(farfield_correlation(k2d, Point::xy(0, 0), Point::xy(4, 0), 3));
}

TEST_CASE("lemma_constant closed forms") {
    CHECK(lemma_constant(k2d) == doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-14));
    CHECK(lemma_constant(k3d) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(lemma_constant(WaveContext(4.0 * kPi, 2)) == doctest::Approx(1.0 / (4.0 * kPi)).epsilon(1e-14));
}

TEST_CASE("property: correlation identity on random pairs") {
    testing::for_all(23, 60, [](testing::Gen& g) {
        const int dim = g.integer(2, 3);
        const WaveContext& ctx = dim == 2 ? k2d : k3d;
        const Point xp = random_point(g, dim, 1.0);
        const Point xj = random_point(g, dim, 1.5);
        const Complex corr = farfield_correlation(ctx, xj, xp, dim == 2 ? 512 : 64);
        const double expected = lemma_constant(ctx) * scaled_im_green(ctx, xp, xj) / im_green_scale(ctx);
        CHECK(std::abs(corr - expected) <= 1e-8);
    });
}
