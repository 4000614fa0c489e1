#include "dsm/measurement.hpp"

#include <algorithm>
#include <cmath>

#include "dsm/error.hpp"

namespace dsm {

namespace {

/// splitmix64 output function applied to x + golden gamma.
std::uint64_t mix64(std::uint64_t x) {
    std::uint64_t z = x + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Uniform in (0, 1): top 53 bits, shifted off zero by half an ulp.
double open_unit(std::uint64_t bits) { return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53; }

constexpr std::uint64_t kNearTag = 0x4e454152ULL;  // "NEAR"
constexpr std::uint64_t kFarTag = 0x464152ULL;     // "FAR"

}  // namespace

void FieldSamples::validate() const {
    if (locations.size() != values.size() || ids.size() != values.size()) {
        throw DomainError("FieldSamples: locations, values and ids differ in length");
    }
    for (const Point& p : locations) {
        const double r = norm(p);
        const double expected = kind == FieldKind::Near ? radius : 1.0;
        if (std::abs(r - expected) > 1e-12 * std::max(1.0, expected)) {
            throw DomainError("FieldSamples: location off the measurement circle");
        }
    }
}

std::vector<Point> near_circle_geometry(const WaveContext& ctx, double radius, int count) {
    if (ctx.dim() != 2) throw DomainError("near_circle_geometry: two-dimensional only");
    if (!(radius > 0.0) || count < 1) throw DomainError("near_circle_geometry: need radius > 0 and count >= 1");
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) {
        const double t = 2.0 * kPi * j / count;
        pts.push_back(Point::xy(radius * std::cos(t), radius * std::sin(t)));
    }
    return pts;
}

std::vector<Direction> far_angles(int count) {
    if (count < 1) throw DomainError("far_angles: count must be at least 1");
    std::vector<Direction> dirs;
    dirs.reserve(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) dirs.push_back(Direction::from_angle(2.0 * kPi * j / count));
    return dirs;
}

FieldSamples make_near_samples(const WaveContext& ctx, double radius, int count, const Direction& incident) {
    FieldSamples s;
    s.kind = FieldKind::Near;
    s.radius = radius;
    s.incident = incident;
    s.locations = near_circle_geometry(ctx, radius, count);
    s.values.assign(s.locations.size(), Complex{});
    s.ids.resize(s.locations.size());
    for (std::size_t j = 0; j < s.ids.size(); ++j) s.ids[j] = j;
    return s;
}

FieldSamples make_far_samples(int count, const Direction& incident) {
    FieldSamples s;
    s.kind = FieldKind::Far;
    s.radius = 1.0;
    s.incident = incident;
    for (const Direction& d : far_angles(count)) s.locations.push_back(d.vec());
    s.values.assign(s.locations.size(), Complex{});
    s.ids.resize(s.locations.size());
    for (std::size_t j = 0; j < s.ids.size(); ++j) s.ids[j] = j;
    return s;
}

Complex noise_draw(std::uint64_t seed, FieldKind kind, std::uint64_t id) {
    const std::uint64_t tag = kind == FieldKind::Near ? kNearTag : kFarTag;
    const std::uint64_t key = mix64(mix64(mix64(seed) ^ tag) ^ id);
    const double u1 = open_unit(mix64(key ^ 1ULL));
    const double u2 = open_unit(mix64(key ^ 2ULL));
    const double r = std::sqrt(-2.0 * std::log(u1));
    return {r * std::cos(2.0 * kPi * u2), r * std::sin(2.0 * kPi * u2)};
}

FieldSamples add_noise(const FieldSamples& samples, const NoiseSpec& spec) {
    if (!(spec.epsilon >= 0.0 && spec.epsilon <= 1.0)) {
        throw DomainError("add_noise: epsilon must lie in [0, 1]");
    }
    if (samples.values.empty()) throw DomainError("add_noise: no samples");
    if (samples.ids.size() != samples.values.size()) throw DomainError("add_noise: ids and values differ in length");
    FieldSamples out = samples;
    if (spec.epsilon == 0.0) return out;
    double peak = 0.0;
    for (const Complex& v : samples.values) peak = std::max(peak, std::abs(v));
    const double scale = spec.epsilon * peak;
    for (std::size_t j = 0; j < out.values.size(); ++j) {
        out.values[j] += scale * noise_draw(spec.seed, samples.kind, samples.ids[j]);
    }
    return out;
}

}  // namespace dsm
