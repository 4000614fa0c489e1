#include "dsm/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "dsm/error.hpp"

namespace dsm {

namespace {

constexpr int kProbeCount = 50;
constexpr double kProbeRadius = 4.0;

std::vector<Complex> probe_data(const WaveContext& ctx, const CellGrid& grid,
                                const std::vector<InducedCurrent>& currents) {
    const std::vector<Direction> dirs = far_angles(kProbeCount);
    const std::vector<Point> ring = near_circle_geometry(ctx, kProbeRadius, kProbeCount);
    std::vector<Complex> out;
    for (const InducedCurrent& c : currents) {
        for (const Direction& d : dirs) out.push_back(scattered_far(ctx, grid, c, d));
        for (const Point& p : ring) out.push_back(scattered_near(ctx, grid, c, p));
    }
    return out;
}

double relative_change(const std::vector<Complex>& prev, const std::vector<Complex>& next) {
    double diff = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < next.size(); ++i) {
        diff = std::max(diff, std::abs(next[i] - prev[i]));
        scale = std::max(scale, std::abs(next[i]));
    }
    return scale > 0.0 ? diff / scale : 0.0;
}

}  // namespace

ForwardResult simulate(const WaveContext& ctx, std::span<const ShapeSpec> shapes,
                       std::span<const Direction> incidents, const ForwardOptions& opts) {
    if (incidents.empty()) throw DomainError("simulate: no incident directions");
    ForwardResult res;
    res.incidents.assign(incidents.begin(), incidents.end());
    res.grid = discretize(ctx, shapes, opts.h);
    if (res.grid.size() > opts.max_cells) {
        throw DomainError("simulate: " + std::to_string(res.grid.size()) + " cells exceed the limit of " +
                          std::to_string(opts.max_cells));
    }
    res.currents = solve_lippmann_schwinger(ctx, res.grid, incidents);
    if (!opts.refine) return res;

    std::vector<Complex> data = probe_data(ctx, res.grid, res.currents);
    double h = opts.h;
    for (;;) {
        h *= 0.5;
        CellGrid finer = discretize(ctx, shapes, h);
        if (finer.size() > opts.max_cells) break;
        std::vector<InducedCurrent> currents = solve_lippmann_schwinger(ctx, finer, incidents);
        std::vector<Complex> next = probe_data(ctx, finer, currents);
        res.last_change = relative_change(data, next);
        res.grid = std::move(finer);
        res.currents = std::move(currents);
        ++res.levels;
        data = std::move(next);
        if (res.last_change < opts.tolerance) {
            res.converged = true;
            break;
        }
    }
    return res;
}

FieldSamples measure_near(const WaveContext& ctx, const ForwardResult& fwd, std::size_t incident, double radius,
                          int count) {
    if (incident >= fwd.currents.size()) throw DomainError("measure_near: incident index out of range");
    FieldSamples s = make_near_samples(ctx, radius, count, fwd.incidents[incident]);
    for (std::size_t j = 0; j < s.size(); ++j) {
        s.values[j] = scattered_near(ctx, fwd.grid, fwd.currents[incident], s.locations[j]);
    }
    return s;
}

FieldSamples measure_far(const WaveContext& ctx, const ForwardResult& fwd, std::size_t incident, int count,
                         FarSource source) {
    if (incident >= fwd.currents.size()) throw DomainError("measure_far: incident index out of range");
    FieldSamples s = make_far_samples(count, fwd.incidents[incident]);
    const std::vector<Direction> dirs = far_angles(count);
    if (source == FarSource::Simpson) {
        const RingSamples ring = ring_samples(ctx, fwd.grid, fwd.currents[incident]);
        s.values = near_to_far_simpson(ctx, ring, dirs);
        return s;
    }
    for (std::size_t j = 0; j < dirs.size(); ++j) {
        s.values[j] = scattered_far(ctx, fwd.grid, fwd.currents[incident], dirs[j]);
    }
    return s;
}

IndicatorGrid image(const WaveContext& ctx, std::span<const FieldSamples> data, const SamplingGrid& grid) {
    if (data.empty()) throw DomainError("image: no data sets");
    std::vector<IndicatorGrid> per_incident;
    per_incident.reserve(data.size());
    for (const FieldSamples& s : data) per_incident.push_back(indicator_grid(ctx, s, grid));
    return combine_max(per_incident);
}

ReproduceResult reproduce(const WaveContext& ctx, const ReproduceOptions& opts) {
    ReproduceResult res;
    res.scenario = build_scenario(opts.scenario, opts.variant);
    if (!opts.incidents.empty()) res.scenario.incidents = opts.incidents;
    if (!opts.epsilons.empty()) res.scenario.noise_levels = opts.epsilons;
    res.cutoff = std::isnan(opts.cutoff) ? res.scenario.cutoff : opts.cutoff;
    res.forward = simulate(ctx, res.scenario.shapes, res.scenario.incidents, opts.forward);

    std::vector<FieldKind> kinds;
    if (opts.use_near) kinds.push_back(FieldKind::Near);
    if (opts.use_far) kinds.push_back(FieldKind::Far);
    if (kinds.empty()) throw ConfigError("reproduce: no data kind selected");

    for (FieldKind kind : kinds) {
        std::vector<FieldSamples> clean;
        for (std::size_t i = 0; i < res.forward.incidents.size(); ++i) {
            clean.push_back(kind == FieldKind::Near
                                ? measure_near(ctx, res.forward, i, opts.near_radius, opts.near_count)
                                : measure_far(ctx, res.forward, i, opts.far_count, opts.far_source));
        }
        for (double eps : res.scenario.noise_levels) {
            ImagingRun run;
            run.kind = kind;
            run.epsilon = eps;
            for (std::size_t i = 0; i < clean.size(); ++i) {
                run.data.push_back(add_noise(clean[i], NoiseSpec{eps, incident_seed(opts.seed, i)}));
            }
            run.image = image(ctx, run.data, opts.grid);
            run.components = superlevel_components(run.image, res.cutoff);
            res.runs.push_back(std::move(run));
        }
    }
    return res;
}

}  // namespace dsm
