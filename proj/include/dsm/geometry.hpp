#pragma once

#include <array>
#include <cmath>

#include "dsm/special_fn.hpp"

namespace dsm {

/// Wavenumber, wavelength and spatial dimension shared by every kernel.
class WaveContext {
public:
    /// k = 2*pi (unit wavelength) in two dimensions.
    WaveContext() = default;
    /// Throws DomainError unless k > 0 and dim is 2 or 3.
    WaveContext(double k, int dim);

    static WaveContext unit_wavelength(int dim = 2) { return WaveContext(2.0 * kPi, dim); }

    double k() const noexcept { return k_; }
    double wavelength() const noexcept { return 2.0 * kPi / k_; }
    int dim() const noexcept { return dim_; }

private:
    double k_ = 2.0 * kPi;
    int dim_ = 2;
};

/// A point in R^2 or R^3. Unused trailing coordinates are zero.
struct Point {
    std::array<double, 3> x{};
    int dim = 2;

    static constexpr Point xy(double a, double b) { return Point{{a, b, 0.0}, 2}; }
    static constexpr Point xyz(double a, double b, double c) { return Point{{a, b, c}, 3}; }

    constexpr double operator[](int i) const { return x[i]; }
    friend bool operator==(const Point&, const Point&) = default;
};

inline double dot(const Point& a, const Point& b) {
    return a.x[0] * b.x[0] + a.x[1] * b.x[1] + a.x[2] * b.x[2];
}

inline double norm(const Point& a) { return std::sqrt(dot(a, a)); }

inline Point operator-(const Point& a, const Point& b) {
    return Point{{a.x[0] - b.x[0], a.x[1] - b.x[1], a.x[2] - b.x[2]}, a.dim};
}

inline Point operator+(const Point& a, const Point& b) {
    return Point{{a.x[0] + b.x[0], a.x[1] + b.x[1], a.x[2] + b.x[2]}, a.dim};
}

inline Point operator*(double s, const Point& a) {
    return Point{{s * a.x[0], s * a.x[1], s * a.x[2]}, a.dim};
}

inline double distance(const Point& a, const Point& b) { return norm(a - b); }

/// Unit vector on the circle or sphere. Construction enforces |d| = 1 within 1e-12.
class Direction {
public:
    /// Throws DomainError if |v| differs from 1 by more than 1e-12.
    explicit Direction(const Point& v);

    /// (cos theta, sin theta).
    static Direction from_angle(double theta);
    static Direction from_degrees(double degrees);
    /// v / |v|; throws DomainError for the zero vector.
    static Direction normalized(const Point& v);

    const Point& vec() const noexcept { return v_; }
    int dim() const noexcept { return v_.dim; }
    double operator[](int i) const { return v_.x[i]; }
    /// Polar angle in (-pi, pi] of the first two components.
    double angle() const { return std::atan2(v_.x[1], v_.x[0]); }

    friend bool operator==(const Direction&, const Direction&) = default;

private:
    Point v_;
};

}  // namespace dsm
