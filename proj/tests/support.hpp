#pragma once
// Independent reference implementations and a small property-test driver.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>

namespace testing {

using Complex = std::complex<double>;
inline constexpr long double kPiL = 3.141592653589793238462643383279502884L;
inline constexpr long double kEulerGammaL = 0.577215664901532860606512090082402431L;

/// J_n(x) by its power series in long double. Reliable to ~1e-13 for |x| <= 15.
inline double series_j(int n, double xd) {
    const long double x = xd;
    const long double q = -x * x / 4.0L;
    long double term = 1.0L;
    for (int i = 1; i <= n; ++i) term *= x / (2.0L * i);
    long double sum = term;
    for (int k = 1; k < 300; ++k) {
        term *= q / (static_cast<long double>(k) * (k + n));
        sum += term;
        if (std::fabs(term) < 1e-24L * std::fabs(sum) && k > x) break;
    }
    return static_cast<double>(sum);
}

/// Y_0(x) by its power series (harmonic-number form) in long double, x <= 15.
inline double series_y0(double xd) {
    const long double x = xd;
    const long double q = x * x / 4.0L;
    long double term = 1.0L;  // q^k / (k!)^2
    long double harmonic = 0.0L;
    long double tail = 0.0L;
    for (int k = 1; k < 300; ++k) {
        term *= q / (static_cast<long double>(k) * k);
        harmonic += 1.0L / k;
        const long double t = ((k & 1) ? 1.0L : -1.0L) * harmonic * term;
        tail += t;
        if (std::fabs(t) < 1e-24L && k > x) break;
    }
    const long double j0 = series_j(0, xd);
    return static_cast<double>((2.0L / kPiL) * ((std::log(x / 2.0L) + kEulerGammaL) * j0 + tail));
}

/// Root of f on [a, b] by bisection; f(a) and f(b) must differ in sign.
inline double bisect(const std::function<double(double)>& f, double a, double b) {
    double fa = f(a);
    for (int i = 0; i < 200 && b - a > 1e-16 * std::fabs(a + b); ++i) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if ((fm < 0) == (fa < 0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

/// Seeded generator for hand-rolled property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    double normal() { return std::normal_distribution<double>()(rng_); }
    Complex complex_normal() { return {normal(), normal()}; }
    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

/// Runs `property` on `cases` generated inputs; the property asserts internally.
template <typename Property>
void for_all(std::uint64_t seed, int cases, Property&& property) {
    Gen g(seed);
    for (int i = 0; i < cases; ++i) property(g);
}

inline double rel_l2(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += std::norm(a[i] - b[i]);
        den += std::norm(b[i]);
    }
    return std::sqrt(num / den);
}

}  // namespace testing
