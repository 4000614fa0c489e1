#pragma once

#include "dsm/geometry.hpp"
#include "dsm/special_fn.hpp"

namespace dsm {

/// Material contrast, given either as eta = (n^2 - 1) k^2 or as n^2.
class Material {
public:
    enum class Kind { Eta, RefractiveIndexSquared };

    static Material eta(Complex value) { return Material(Kind::Eta, value); }
    static Material nsq(Complex value) { return Material(Kind::RefractiveIndexSquared, value); }

    Kind kind() const noexcept { return kind_; }
    Complex value() const noexcept { return value_; }

    /// eta for the given wavenumber.
    Complex eta_at(double k) const {
        return kind_ == Kind::Eta ? value_ : (value_ - 1.0) * k * k;
    }

    friend bool operator==(const Material&, const Material&) = default;

private:
    Material(Kind kind, Complex value) : kind_(kind), value_(value) {}
    Kind kind_;
    Complex value_;
};

enum class ShapeKind { Square, RingSquare, Bar, Disk };

/// One scatterer component. Lengths are in the units of the wave context.
///
/// Boxes are half-open: the minimum edges belong to the shape, the maximum
/// edges do not. This keeps lattice discretizations free of double counting.
struct ShapeSpec {
    ShapeKind kind = ShapeKind::Square;
    Point center = Point::xy(0.0, 0.0);
    double side = 0.0;        // square side, ring outer side
    double inner_side = 0.0;  // ring hole side
    double length = 0.0;      // bar
    double thickness = 0.0;   // bar
    double angle = 0.0;       // bar orientation, radians from the x axis
    double radius = 0.0;      // disk
    Material material = Material::eta(1.0);

    static ShapeSpec square(Point center, double side, Material m);
    static ShapeSpec ring_square(Point center, double outer, double inner, Material m);
    static ShapeSpec bar(Point center, double length, double thickness, double angle, Material m);
    static ShapeSpec disk(Point center, double radius, Material m);

    /// Axis-aligned bounding box {xmin, xmax, ymin, ymax}.
    struct Box {
        double xmin, xmax, ymin, ymax;
    };
    Box bounds() const;
};

/// Exact point-in-shape test.
bool contains(const ShapeSpec& shape, const Point& x);

}  // namespace dsm
