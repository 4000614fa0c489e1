#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dsm/geometry.hpp"
#include "dsm/shape.hpp"

namespace dsm {

/// A reconstruction benchmark: scatterer, illumination and protocol knobs.
/// Lengths are in wavelengths (lambda = 1 at k = 2 pi).
struct Scenario {
    std::string name;
    std::string variant;
    std::vector<ShapeSpec> shapes;
    std::vector<Direction> incidents;
    std::vector<double> noise_levels;
    /// Superlevel cutoff used when reporting components.
    double cutoff = 0.75;
    /// Expected component centroids, one per disjoint scatterer.
    std::vector<Point> truth_centroids;

    /// True when x lies in the scatterer support.
    bool in_support(const Point& x) const;
};

/// (1, 1)/sqrt 2.
Direction incident_d1();
/// (1, -1)/sqrt 2.
Direction incident_d2();

/// Material of the sound-soft obstacle stand-in: n^2 = 1 + 50i.
Material obstacle_material();

/// Presets ex1..ex7. Variants: "close" (ex3, 0.2 separation),
/// "high-contrast" (ex5, n^2 = 10 + 10i), "single-incident" (ex7, d2 only).
/// Throws ConfigError for an unknown id or variant.
Scenario build_scenario(std::string_view id, std::string_view variant = "");

std::vector<std::string> scenario_ids();

}  // namespace dsm
