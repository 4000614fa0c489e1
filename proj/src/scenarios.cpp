#include "dsm/scenarios.hpp"

#include <cmath>

#include "dsm/error.hpp"

namespace dsm {

namespace {

const Material kUnitEta = Material::eta(1.0);
constexpr double kSquareSide = 0.3;
constexpr double kCrackThickness = 0.1;

void reject_variant(std::string_view id, std::string_view variant) {
    throw ConfigError("scenario " + std::string(id) + " has no variant '" + std::string(variant) + "'");
}

}  // namespace

Direction incident_d1() { return Direction::normalized(Point::xy(1.0, 1.0)); }
Direction incident_d2() { return Direction::normalized(Point::xy(1.0, -1.0)); }

Material obstacle_material() { return Material::nsq(Complex{1.0, 50.0}); }

bool Scenario::in_support(const Point& x) const {
    for (const ShapeSpec& s : shapes) {
        if (contains(s, x)) return true;
    }
    return false;
}

std::vector<std::string> scenario_ids() { return {"ex1", "ex2", "ex3", "ex4", "ex5", "ex6", "ex7"}; }

Scenario build_scenario(std::string_view id, std::string_view variant) {
    Scenario s;
    s.name = std::string(id);
    s.variant = std::string(variant);
    s.incidents = {incident_d1()};
    s.noise_levels = {0.0, 0.2};

    if (id == "ex1") {
        if (!variant.empty()) reject_variant(id, variant);
        s.shapes = {ShapeSpec::square(Point::xy(0.0, 0.0), 0.02, kUnitEta)};
    } else if (id == "ex2") {
        if (!variant.empty()) reject_variant(id, variant);
        s.shapes = {ShapeSpec::square(Point::xy(-0.8, -0.7), kSquareSide, kUnitEta),
                    ShapeSpec::square(Point::xy(0.3, 0.8), kSquareSide, kUnitEta)};
    } else if (id == "ex3") {
        double half_gap = 0.25;
        if (variant == "close") {
            half_gap = 0.1;
        } else if (!variant.empty()) {
            reject_variant(id, variant);
        }
        s.shapes = {ShapeSpec::square(Point::xy(-half_gap, 0.0), kSquareSide, kUnitEta),
                    ShapeSpec::square(Point::xy(half_gap, 0.0), kSquareSide, kUnitEta)};
    } else if (id == "ex4") {
        if (!variant.empty()) reject_variant(id, variant);
        s.shapes = {ShapeSpec::ring_square(Point::xy(0.0, 0.0), 0.6, 0.4, kUnitEta)};
        s.incidents = {incident_d1(), incident_d2()};
    } else if (id == "ex5") {
        Material medium = kUnitEta;
        if (variant == "high-contrast") {
            medium = Material::nsq(Complex{10.0, 10.0});
        } else if (!variant.empty()) {
            reject_variant(id, variant);
        }
        s.shapes = {ShapeSpec::square(Point::xy(-0.8, -0.7), kSquareSide, obstacle_material()),
                    ShapeSpec::square(Point::xy(0.3, 0.8), kSquareSide, medium)};
    } else if (id == "ex6") {
        if (!variant.empty()) reject_variant(id, variant);
        s.shapes = {ShapeSpec::bar(Point::xy(0.0, 0.0), 1.0, kCrackThickness, 0.0, kUnitEta)};
        s.incidents = {Direction::from_angle(0.0)};
        s.cutoff = 0.7;
    } else if (id == "ex7") {
        // Corner at the origin, one unit bar along +x and one along +y.
        s.shapes = {ShapeSpec::bar(Point::xy(0.5, 0.0), 1.0, kCrackThickness, 0.0, kUnitEta),
                    ShapeSpec::bar(Point::xy(0.0, 0.5), 1.0, kCrackThickness, kPi / 2.0, kUnitEta)};
        s.incidents = {incident_d1(), incident_d2()};
        if (variant == "single-incident") {
            s.incidents = {incident_d2()};
        } else if (!variant.empty()) {
            reject_variant(id, variant);
        }
        s.noise_levels = {0.0, 0.05, 0.1, 0.2};
        s.cutoff = 0.7;
    } else {
        throw ConfigError("unknown scenario id '" + std::string(id) + "'");
    }

    if (s.name == "ex7") {
        s.truth_centroids = {Point::xy(0.25, 0.25)};
    } else {
        for (const ShapeSpec& shape : s.shapes) s.truth_centroids.push_back(shape.center);
    }
    return s;
}

}  // namespace dsm
