#pragma once

#include <complex>
#include <numbers>

namespace dsm {

/// Every field value in the library is a double-precision complex number.
using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = std::numbers::pi;

/// Highest Bessel order supported by bessel_j / bessel_y.
inline constexpr int kMaxBesselOrder = 60;

/// Bessel function of the first kind J_n(x), integer order 0 <= n <= 60.
///
/// Power series for |x| < 1, Miller backward recurrence normalized by
/// J_0 + 2 sum J_2k = 1 otherwise, Hankel asymptotics for n <= 1 and |x| > 25.
/// Absolute error is below 1e-12 for |x| <= 100.
/// Throws DomainError for non-finite x or an order outside [0, 60].
double bessel_j(int order, double x);

/// Bessel function of the second kind Y_n(x), x > 0, 0 <= n <= 60.
///
/// Y_0 and Y_1 come from the Neumann series over the Miller sequence
/// (x <= 25) or Hankel asymptotics (x > 25); higher orders use the
/// forward recurrence, which is stable for Y_n.
double bessel_y(int order, double x);

/// H_0^(1)(x) = J_0(x) + i Y_0(x) for x > 0.
Complex hankel1_0(double x);

/// H_1^(1)(x) = J_1(x) + i Y_1(x) for x > 0.
Complex hankel1_1(double x);

/// J_0, J_1, Y_0, Y_1 at one argument, sharing a single Miller sweep.
struct CylinderPair {
    double j0, j1, y0, y1;
};
CylinderPair bessel_jy01(double x);

/// sin(x)/x with the removable singularity at zero.
double spherical_j0(double x);

}  // namespace dsm
