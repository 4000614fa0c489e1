#include "dsm/shape.hpp"

#include <algorithm>
#include <cmath>

#include "dsm/error.hpp"

namespace dsm {

namespace {

// Tolerance on box edges so that lattice points computed as i*h land on the
// intended side of an edge that is an exact multiple of h.
constexpr double kEdgeTol = 1e-9;

bool in_half_open(double v, double lo, double hi) { return v >= lo - kEdgeTol && v < hi - kEdgeTol; }

bool in_centered_box(double dx, double dy, double width, double height) {
    return in_half_open(dx, -0.5 * width, 0.5 * width) && in_half_open(dy, -0.5 * height, 0.5 * height);
}

}  // namespace

ShapeSpec ShapeSpec::square(Point center, double side, Material m) {
    if (!(side > 0.0)) throw DomainError("square: side must be positive");
    ShapeSpec s;
    s.kind = ShapeKind::Square;
    s.center = center;
    s.side = side;
    s.material = m;
    return s;
}

ShapeSpec ShapeSpec::ring_square(Point center, double outer, double inner, Material m) {
    if (!(inner > 0.0) || !(inner < outer)) {
        throw DomainError("ring_square: need 0 < inner side < outer side");
    }
    ShapeSpec s;
    s.kind = ShapeKind::RingSquare;
    s.center = center;
    s.side = outer;
    s.inner_side = inner;
    s.material = m;
    return s;
}

ShapeSpec ShapeSpec::bar(Point center, double length, double thickness, double angle, Material m) {
    if (!(thickness > 0.0) || !(thickness < length)) {
        throw DomainError("bar: need 0 < thickness < length");
    }
    ShapeSpec s;
    s.kind = ShapeKind::Bar;
    s.center = center;
    s.length = length;
    s.thickness = thickness;
    s.angle = angle;
    s.material = m;
    return s;
}

ShapeSpec ShapeSpec::disk(Point center, double radius, Material m) {
    if (!(radius > 0.0)) throw DomainError("disk: radius must be positive");
    ShapeSpec s;
    s.kind = ShapeKind::Disk;
    s.center = center;
    s.radius = radius;
    s.material = m;
    return s;
}

ShapeSpec::Box ShapeSpec::bounds() const {
    double hx = 0.0;
    double hy = 0.0;
    switch (kind) {
        case ShapeKind::Square:
        case ShapeKind::RingSquare:
            hx = hy = 0.5 * side;
            break;
        case ShapeKind::Disk:
            hx = hy = radius;
            break;
        case ShapeKind::Bar: {
            const double c = std::abs(std::cos(angle));
            const double s = std::abs(std::sin(angle));
            hx = 0.5 * (length * c + thickness * s);
            hy = 0.5 * (length * s + thickness * c);
            break;
        }
    }
    return {center[0] - hx, center[0] + hx, center[1] - hy, center[1] + hy};
}

bool contains(const ShapeSpec& shape, const Point& x) {
    const double dx = x[0] - shape.center[0];
    const double dy = x[1] - shape.center[1];
    switch (shape.kind) {
        case ShapeKind::Square:
            return in_centered_box(dx, dy, shape.side, shape.side);
        case ShapeKind::RingSquare:
            return in_centered_box(dx, dy, shape.side, shape.side) &&
                   !in_centered_box(dx, dy, shape.inner_side, shape.inner_side);
        case ShapeKind::Bar: {
            const double c = std::cos(shape.angle);
            const double s = std::sin(shape.angle);
            const double along = c * dx + s * dy;
            const double across = -s * dx + c * dy;
            return in_centered_box(along, across, shape.length, shape.thickness);
        }
        case ShapeKind::Disk:
            return dx * dx + dy * dy < shape.radius * shape.radius;
    }
    return false;
}

}  // namespace dsm
