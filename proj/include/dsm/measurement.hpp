#pragma once

#include <cstdint>
#include <vector>

#include "dsm/geometry.hpp"
#include "dsm/special_fn.hpp"

namespace dsm {

enum class FieldKind { Near, Far };

/// Measured data for one incident wave.
///
/// Near samples live on a circle of `radius` centered at the origin; far
/// samples are unit directions stored as points. `ids` label the measurement
/// positions (index j of the generating geometry) and key the noise draws.
struct FieldSamples {
    FieldKind kind = FieldKind::Far;
    std::vector<Point> locations;
    std::vector<Complex> values;
    std::vector<std::uint64_t> ids;
    Direction incident = Direction::from_angle(kPi / 4.0);
    double radius = 1.0;

    std::size_t size() const noexcept { return values.size(); }
    /// Throws DomainError when the invariants (matching lengths, radius) fail.
    void validate() const;
};

struct NoiseSpec {
    double epsilon = 0.0;  // relative level in [0, 1]
    std::uint64_t seed = 0;
};

/// count points radius (cos 2 pi j/count, sin 2 pi j/count), j = 0..count-1.
std::vector<Point> near_circle_geometry(const WaveContext& ctx, double radius, int count);

/// count unit directions at angles 2 pi j/count. Throws DomainError for count < 1.
std::vector<Direction> far_angles(int count);

/// Near-field samples skeleton: geometry, ids and zero values.
FieldSamples make_near_samples(const WaveContext& ctx, double radius, int count, const Direction& incident);
/// Far-field samples skeleton.
FieldSamples make_far_samples(int count, const Direction& incident);

/// Standard normal pair for one sample, from the counter-based generator.
///
/// With mix(x) the splitmix64 output function of x + 0x9e3779b97f4a7c15:
///   key = mix(mix(mix(seed) ^ tag) ^ id), tag = 0x4e454152 (near) or 0x464152 (far)
///   u_i = ((mix(key ^ i) >> 11) + 0.5) * 2^-53, i = 1, 2
///   zeta = sqrt(-2 ln u1) * (cos 2 pi u2 + i sin 2 pi u2)   (Box-Muller)
Complex noise_draw(std::uint64_t seed, FieldKind kind, std::uint64_t id);

/// value_j + epsilon * zeta_j * max_i |value_i| with zeta_j = noise_draw(seed, kind, id_j).
/// The input is left untouched; epsilon = 0 returns an exact copy.
FieldSamples add_noise(const FieldSamples& samples, const NoiseSpec& spec);

}  // namespace dsm
