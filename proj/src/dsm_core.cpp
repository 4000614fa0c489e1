#include "dsm/dsm_core.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "dsm/error.hpp"
#include "dsm/green_kernel.hpp"

namespace dsm {

namespace {

double sphere_measure(int dim) { return dim == 2 ? 2.0 * kPi : 4.0 * kPi; }

double l2_norm(std::span<const Complex> v, double weight) {
    double s = 0.0;
    for (const Complex& z : v) s += std::norm(z);
    return std::sqrt(weight * s);
}

double clamp_unit(double v) { return std::min(1.0, v); }

}  // namespace

SamplingGrid SamplingGrid::make(double xmin, double xmax, double ymin, double ymax, double h) {
    if (!(h > 0.0)) throw DomainError("SamplingGrid: pitch must be positive");
    if (!(xmax >= xmin) || !(ymax >= ymin)) throw DomainError("SamplingGrid: inverted domain");
    SamplingGrid g;
    g.xmin = xmin;
    g.xmax = xmax;
    g.ymin = ymin;
    g.ymax = ymax;
    g.h = h;
    g.nx = static_cast<int>(std::floor((xmax - xmin) / h + 1e-9)) + 1;
    g.ny = static_cast<int>(std::floor((ymax - ymin) / h + 1e-9)) + 1;
    return g;
}

std::size_t IndicatorGrid::argmax() const {
    if (values.empty()) throw DomainError("argmax of an empty grid");
    return static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
}

FarIndicator::FarIndicator(const WaveContext& ctx, const FieldSamples& data) : ctx_(ctx) {
    if (data.kind != FieldKind::Far) throw DomainError("FarIndicator: expected far-field samples");
    if (data.values.empty()) throw DegenerateDataError("FarIndicator: no samples");
    if (data.locations.size() != data.values.size()) throw DomainError("FarIndicator: malformed samples");
    directions_.reserve(data.locations.size());
    for (const Point& p : data.locations) directions_.emplace_back(p);
    values_ = data.values;
    weight_ = sphere_measure(ctx.dim()) / static_cast<double>(values_.size());
    data_norm_ = l2_norm(values_, weight_);
    if (!(data_norm_ > 0.0)) throw DegenerateDataError("FarIndicator: far-field data vanish identically");
    Point origin;
    origin.dim = ctx.dim();
    kernel_norm_ = kernel_norm_at(origin);
}

double FarIndicator::kernel_norm_at(const Point& xp) const {
    double s = 0.0;
    for (const Direction& d : directions_) s += std::norm(green_farfield(ctx_, d, xp));
    return std::sqrt(weight_ * s);
}

double FarIndicator::operator()(const Point& xp) const {
    Complex inner{0.0, 0.0};
    for (std::size_t j = 0; j < directions_.size(); ++j) {
        inner += values_[j] * std::conj(green_farfield(ctx_, directions_[j], xp));
    }
    return clamp_unit(std::abs(weight_ * inner) / (data_norm_ * kernel_norm_));
}

NearIndicator::NearIndicator(const WaveContext& ctx, const FieldSamples& data) : ctx_(ctx) {
    if (data.kind != FieldKind::Near) throw DomainError("NearIndicator: expected near-field samples");
    if (data.values.empty()) throw DegenerateDataError("NearIndicator: no samples");
    if (data.locations.size() != data.values.size()) throw DomainError("NearIndicator: malformed samples");
    points_ = data.locations;
    values_ = data.values;
    radius_ = data.radius;
    const double perimeter = ctx.dim() == 2 ? 2.0 * kPi * radius_ : 4.0 * kPi * radius_ * radius_;
    weight_ = perimeter / static_cast<double>(values_.size());
    data_norm_ = l2_norm(values_, weight_);
    if (!(data_norm_ > 0.0)) throw DegenerateDataError("NearIndicator: near-field data vanish identically");
}

double NearIndicator::operator()(const Point& xp) const {
    if (!(norm(xp) < radius_)) {
        throw DomainError("NearIndicator: sampling point must lie strictly inside the measurement circle");
    }
    Complex inner{0.0, 0.0};
    double gnorm2 = 0.0;
    for (std::size_t j = 0; j < points_.size(); ++j) {
        const Complex g = green(ctx_, points_[j], xp);
        inner += values_[j] * std::conj(g);
        gnorm2 += std::norm(g);
    }
    const double gnorm = std::sqrt(weight_ * gnorm2);
    return clamp_unit(std::abs(weight_ * inner) / (data_norm_ * gnorm));
}

double indicator_far(const WaveContext& ctx, const FieldSamples& data, const Point& xp) {
    return FarIndicator(ctx, data)(xp);
}

double indicator_near(const WaveContext& ctx, const FieldSamples& data, const Point& xp) {
    return NearIndicator(ctx, data)(xp);
}

namespace {

template <typename Indicator>
void sweep(const Indicator& phi, const SamplingGrid& grid, std::vector<double>& out, Execution exec) {
    const long n = static_cast<long>(grid.size());
    if (exec == Execution::Serial) {
        for (long i = 0; i < n; ++i) out[i] = phi(grid.node(static_cast<std::size_t>(i)));
        return;
    }
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) out[i] = phi(grid.node(static_cast<std::size_t>(i)));
}

}  // namespace

IndicatorGrid evaluate_indicator(const WaveContext& ctx, const FieldSamples& data, const SamplingGrid& grid,
                                 Execution exec) {
    if (grid.size() == 0) throw DomainError("evaluate_indicator: empty sampling grid");
    IndicatorGrid out;
    out.grid = grid;
    out.values.resize(grid.size());
    if (data.kind == FieldKind::Far) {
        sweep(FarIndicator(ctx, data), grid, out.values, exec);
    } else {
        sweep(NearIndicator(ctx, data), grid, out.values, exec);
    }
    return out;
}

IndicatorGrid normalize(IndicatorGrid g) {
    const double peak = g.values.empty() ? 0.0 : *std::max_element(g.values.begin(), g.values.end());
    if (!(peak > 0.0)) throw DegenerateDataError("normalize: indicator vanishes on the whole grid");
    if (peak != 1.0) {
        for (double& v : g.values) v /= peak;
    }
    return g;
}

IndicatorGrid indicator_grid(const WaveContext& ctx, const FieldSamples& data, const SamplingGrid& grid) {
    return normalize(evaluate_indicator(ctx, data, grid, Execution::Parallel));
}

IndicatorGrid indicator_grid_serial(const WaveContext& ctx, const FieldSamples& data, const SamplingGrid& grid) {
    return normalize(evaluate_indicator(ctx, data, grid, Execution::Serial));
}

IndicatorGrid combine_max(std::span<const IndicatorGrid> grids) {
    if (grids.empty()) throw DomainError("combine_max: nothing to combine");
    IndicatorGrid out = grids.front();
    for (const IndicatorGrid& g : grids.subspan(1)) {
        if (!(g.grid == out.grid) || g.values.size() != out.values.size()) {
            throw DomainError("combine_max: grids differ");
        }
        for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = std::max(out.values[i], g.values[i]);
    }
    return out;
}

std::vector<Component> superlevel_components(const IndicatorGrid& grid, double cutoff) {
    if (!(cutoff > 0.0 && cutoff <= 1.0)) throw DomainError("superlevel_components: cutoff must lie in (0, 1]");
    const int nx = grid.grid.nx;
    const int ny = grid.grid.ny;
    std::vector<char> seen(grid.values.size(), 0);
    std::vector<Component> comps;

    for (std::size_t start = 0; start < grid.values.size(); ++start) {
        if (seen[start] || grid.values[start] < cutoff) continue;
        Component c;
        std::deque<std::size_t> queue{start};
        seen[start] = 1;
        while (!queue.empty()) {
            const std::size_t idx = queue.front();
            queue.pop_front();
            c.nodes.push_back(idx);
            const int ix = static_cast<int>(idx % nx);
            const int iy = static_cast<int>(idx / nx);
            const int nbr[4][2] = {{ix - 1, iy}, {ix + 1, iy}, {ix, iy - 1}, {ix, iy + 1}};
            for (const auto& p : nbr) {
                if (p[0] < 0 || p[0] >= nx || p[1] < 0 || p[1] >= ny) continue;
                const std::size_t j = static_cast<std::size_t>(p[1]) * nx + p[0];
                if (!seen[j] && grid.values[j] >= cutoff) {
                    seen[j] = 1;
                    queue.push_back(j);
                }
            }
        }
        std::sort(c.nodes.begin(), c.nodes.end());
        double sx = 0.0;
        double sy = 0.0;
        c.xmin = c.ymin = std::numeric_limits<double>::infinity();
        c.xmax = c.ymax = -std::numeric_limits<double>::infinity();
        for (std::size_t idx : c.nodes) {
            const Point p = grid.grid.node(idx);
            sx += p[0];
            sy += p[1];
            c.xmin = std::min(c.xmin, p[0]);
            c.xmax = std::max(c.xmax, p[0]);
            c.ymin = std::min(c.ymin, p[1]);
            c.ymax = std::max(c.ymax, p[1]);
        }
        const double n = static_cast<double>(c.nodes.size());
        c.centroid = Point::xy(sx / n, sy / n);
        comps.push_back(std::move(c));
    }
    std::stable_sort(comps.begin(), comps.end(),
                     [](const Component& a, const Component& b) { return a.size() > b.size(); });
    return comps;
}

}  // namespace dsm
