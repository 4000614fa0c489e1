#pragma once

#include <span>
#include <vector>

#include "dsm/geometry.hpp"
#include "dsm/measurement.hpp"
#include "dsm/special_fn.hpp"

namespace dsm {

/// Rectangular lattice of sampling points x_p, row-major with x fastest.
struct SamplingGrid {
    double xmin = -2.0;
    double xmax = 2.0;
    double ymin = -2.0;
    double ymax = 2.0;
    double h = 0.01;
    int nx = 401;
    int ny = 401;

    /// Nodes xmin + i h for i = 0..floor(width/h); throws DomainError for h <= 0 or an inverted box.
    static SamplingGrid make(double xmin, double xmax, double ymin, double ymax, double h);
    /// [-2, 2]^2 with h = 0.01 (401 x 401 nodes).
    static SamplingGrid standard() { return make(-2.0, 2.0, -2.0, 2.0, 0.01); }

    std::size_t size() const noexcept { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
    Point node(int ix, int iy) const { return Point::xy(xmin + ix * h, ymin + iy * h); }
    Point node(std::size_t index) const {
        return node(static_cast<int>(index % static_cast<std::size_t>(nx)),
                    static_cast<int>(index / static_cast<std::size_t>(nx)));
    }

    friend bool operator==(const SamplingGrid&, const SamplingGrid&) = default;
};

struct IndicatorGrid {
    SamplingGrid grid;
    std::vector<double> values;

    /// Index of the largest value; ties go to the lowest index.
    std::size_t argmax() const;
    Point argmax_point() const { return grid.node(argmax()); }
};

enum class Execution { Serial, Parallel };

/// Far-field indicator for one data set. Norms of the data and of the
/// (position-independent) kernel trace are computed once.
class FarIndicator {
public:
    /// Throws DegenerateDataError for all-zero data.
    FarIndicator(const WaveContext& ctx, const FieldSamples& data);

    /// |<u_inf, G_inf(., xp)>| / (||u_inf|| ||G_inf(., xp)||), in [0, 1].
    double operator()(const Point& xp) const;

    double kernel_norm() const noexcept { return kernel_norm_; }
    /// ||G_inf(., xp)|| evaluated at an explicit xp (equal to kernel_norm()).
    double kernel_norm_at(const Point& xp) const;

private:
    WaveContext ctx_;
    std::vector<Direction> directions_;
    std::vector<Complex> values_;
    double weight_;
    double data_norm_;
    double kernel_norm_;
};

/// Near-field indicator; the kernel norm depends on xp and is recomputed per node.
class NearIndicator {
public:
    NearIndicator(const WaveContext& ctx, const FieldSamples& data);

    /// Throws DomainError unless |xp| < radius of the measurement circle.
    double operator()(const Point& xp) const;

private:
    WaveContext ctx_;
    std::vector<Point> points_;
    std::vector<Complex> values_;
    double radius_;
    double weight_;
    double data_norm_;
};

double indicator_far(const WaveContext& ctx, const FieldSamples& data, const Point& xp);
double indicator_near(const WaveContext& ctx, const FieldSamples& data, const Point& xp);

/// Indicator at every node, before normalization (values in [0, 1]).
IndicatorGrid evaluate_indicator(const WaveContext& ctx, const FieldSamples& data, const SamplingGrid& grid,
                                 Execution exec = Execution::Parallel);

/// Divides by the grid maximum so the peak is exactly 1.
/// Throws DegenerateDataError when every value is zero.
IndicatorGrid normalize(IndicatorGrid g);

/// evaluate_indicator followed by normalize.
IndicatorGrid indicator_grid(const WaveContext& ctx, const FieldSamples& data, const SamplingGrid& grid);
/// Single-threaded reference for indicator_grid.
IndicatorGrid indicator_grid_serial(const WaveContext& ctx, const FieldSamples& data, const SamplingGrid& grid);

/// Node-wise maximum. Throws DomainError for an empty list or differing grids.
IndicatorGrid combine_max(std::span<const IndicatorGrid> grids);

struct Component {
    std::vector<std::size_t> nodes;
    Point centroid;
    double xmin, xmax, ymin, ymax;

    std::size_t size() const noexcept { return nodes.size(); }
    double width() const { return xmax - xmin; }
    double height() const { return ymax - ymin; }
};

/// 4-connected components of {value >= cutoff}, largest first (ties by
/// lowest node index). cutoff must lie in (0, 1].
std::vector<Component> superlevel_components(const IndicatorGrid& grid, double cutoff);

}  // namespace dsm
