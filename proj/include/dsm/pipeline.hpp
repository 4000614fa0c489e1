#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "dsm/dsm_core.hpp"
#include "dsm/forward_model.hpp"
#include "dsm/measurement.hpp"
#include "dsm/scenarios.hpp"

namespace dsm {

struct ForwardOptions {
    /// Starting pitch, in wavelengths.
    double h = 0.02;
    /// Halve h until the data change by less than `tolerance` (relative max norm).
    bool refine = true;
    double tolerance = 1e-3;
    /// Refinement stops before a level would exceed this many cells.
    std::size_t max_cells = 5000;
};

struct ForwardResult {
    CellGrid grid;
    std::vector<Direction> incidents;
    std::vector<InducedCurrent> currents;
    int levels = 1;
    /// Relative max-norm change between the last two levels (NaN for one level).
    double last_change = std::numeric_limits<double>::quiet_NaN();
    bool converged = false;
};

/// Discretizes and solves the scattering problem for every incident. During
/// refinement the compared data are the far field at 50 angles and the near
/// field at 50 points on the radius-4 circle.
ForwardResult simulate(const WaveContext& ctx, std::span<const ShapeSpec> shapes,
                       std::span<const Direction> incidents, const ForwardOptions& opts = {});

enum class FarSource { Direct, Simpson };

FieldSamples measure_near(const WaveContext& ctx, const ForwardResult& fwd, std::size_t incident, double radius = 4.0,
                          int count = 50);
/// Direct: sum over cells of the far-field kernel. Simpson: near-to-far ring rule at radius 5.
FieldSamples measure_far(const WaveContext& ctx, const ForwardResult& fwd, std::size_t incident, int count = 50,
                         FarSource source = FarSource::Direct);

/// Noise seed used for incident number i of a run seeded with `seed`.
inline std::uint64_t incident_seed(std::uint64_t seed, std::size_t i) { return seed + i; }

/// Per-incident normalized indicators combined by the node-wise maximum.
IndicatorGrid image(const WaveContext& ctx, std::span<const FieldSamples> data, const SamplingGrid& grid);

struct ReproduceOptions {
    std::string scenario;
    std::string variant;
    /// Empty means the scenario's noise levels.
    std::vector<double> epsilons;
    std::uint64_t seed = 0;
    SamplingGrid grid = SamplingGrid::standard();
    /// NaN means the scenario's cutoff.
    double cutoff = std::numeric_limits<double>::quiet_NaN();
    double near_radius = 4.0;
    int near_count = 50;
    int far_count = 50;
    FarSource far_source = FarSource::Direct;
    bool use_near = true;
    bool use_far = true;
    /// Empty means the scenario's incidents.
    std::vector<Direction> incidents;
    ForwardOptions forward;
};

struct ImagingRun {
    FieldKind kind = FieldKind::Far;
    double epsilon = 0.0;
    std::vector<FieldSamples> data;
    IndicatorGrid image;
    std::vector<Component> components;
};

struct ReproduceResult {
    Scenario scenario;
    ForwardResult forward;
    double cutoff = 0.75;
    std::vector<ImagingRun> runs;
};

/// synthesize -> add noise -> image -> superlevel components, for each data
/// kind and noise level. Deterministic given the options.
ReproduceResult reproduce(const WaveContext& ctx, const ReproduceOptions& opts);

}  // namespace dsm
