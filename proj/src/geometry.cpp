#include "dsm/geometry.hpp"

#include <string>

#include "dsm/error.hpp"

namespace dsm {

WaveContext::WaveContext(double k, int dim) : k_(k), dim_(dim) {
    if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("WaveContext: wavenumber must be positive");
    if (dim != 2 && dim != 3) {
        throw DomainError("WaveContext: dimension must be 2 or 3, got " + std::to_string(dim));
    }
}

Direction::Direction(const Point& v) : v_(v) {
    if (std::abs(norm(v) - 1.0) > 1e-12) throw DomainError("Direction: vector is not unit length");
}

Direction Direction::from_angle(double theta) {
    return Direction(Point::xy(std::cos(theta), std::sin(theta)));
}

Direction Direction::from_degrees(double degrees) {
    return from_angle(degrees * kPi / 180.0);
}

Direction Direction::normalized(const Point& v) {
    const double n = norm(v);
    if (!(n > 0.0)) throw DomainError("Direction: cannot normalize the zero vector");
    return Direction((1.0 / n) * v);
}

}  // namespace dsm
