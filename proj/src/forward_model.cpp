#include "dsm/forward_model.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "dsm/error.hpp"
#include "dsm/green_kernel.hpp"

namespace dsm {

namespace {

constexpr double kMinRcond = 1e-13;
constexpr double kMaxInteriorArgument = 20.0;

void require_2d(const WaveContext& ctx, const char* fn) {
    if (ctx.dim() != 2) throw DomainError(std::string(fn) + ": only two-dimensional problems are supported");
}

Complex self_term(const WaveContext& ctx, double area) {
    return self_cell_integral(ctx, std::sqrt(area / kPi));
}

/// G(x, y) for 2D without the dimension bookkeeping of green().
Complex green2d(double k, const Point& x, const Point& y) {
    const double r = std::hypot(x[0] - y[0], x[1] - y[1]);
    const CylinderPair p = bessel_jy01(k * r);
    return {-0.25 * p.y0, 0.25 * p.j0};
}

/// J_m(z) for complex z by the power series; adequate for |z| <= 20.
Complex bessel_j_complex(int m, Complex z) {
    if (m < 0) {
        const Complex v = bessel_j_complex(-m, z);
        return (m & 1) ? -v : v;
    }
    const Complex half = 0.5 * z;
    Complex term{1.0, 0.0};
    for (int i = 1; i <= m; ++i) term *= half / static_cast<double>(i);
    Complex sum = term;
    const Complex q = -half * half;
    const double zabs = std::abs(z);
    for (int k = 1; k < 400; ++k) {
        term *= q / (static_cast<double>(k) * (k + m));
        sum += term;
        if (k > zabs && std::abs(term) <= 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

struct ExteriorValues {
    double j, dj;
    Complex h, dh;
};

ExteriorValues exterior(int m, double x) {
    auto j = [x](int n) { return n < 0 ? -bessel_j(1, x) : bessel_j(n, x); };
    auto y = [x](int n) { return n < 0 ? -bessel_y(1, x) : bessel_y(n, x); };
    ExteriorValues v;
    v.j = bessel_j(m, x);
    const double ym = bessel_y(m, x);
    // J_m' = (J_{m-1} - J_{m+1}) / 2, with J_{-1} = -J_1.
    v.dj = 0.5 * (j(m - 1) - bessel_j(m + 1, x));
    const double dy = 0.5 * (y(m - 1) - bessel_y(m + 1, x));
    v.h = {v.j, ym};
    v.dh = {v.dj, dy};
    return v;
}

}  // namespace

double CellGrid::total_area() const {
    return std::accumulate(cells.begin(), cells.end(), 0.0,
                           [](double acc, const Cell& c) { return acc + c.area; });
}

Complex incident_plane_wave(const WaveContext& ctx, const Direction& d, const Point& x) {
    return std::exp(kI * (ctx.k() * dot(x, d.vec())));
}

CellGrid discretize(const WaveContext& ctx, std::span<const ShapeSpec> shapes, double h) {
    require_2d(ctx, "discretize");
    if (!(h > 0.0) || h > ctx.wavelength() / 10.0 * (1.0 + 1e-12)) {
        throw DomainError("discretize: pitch must satisfy 0 < h <= lambda/10");
    }
    if (shapes.empty()) throw Error("discretize: no shapes given");

    double xmin = std::numeric_limits<double>::infinity();
    double ymin = xmin;
    double xmax = -xmin;
    double ymax = -xmin;
    for (const ShapeSpec& s : shapes) {
        const ShapeSpec::Box b = s.bounds();
        xmin = std::min(xmin, b.xmin);
        xmax = std::max(xmax, b.xmax);
        ymin = std::min(ymin, b.ymin);
        ymax = std::max(ymax, b.ymax);
    }
    const long ix0 = static_cast<long>(std::floor(xmin / h)) - 1;
    const long ix1 = static_cast<long>(std::ceil(xmax / h)) + 1;
    const long iy0 = static_cast<long>(std::floor(ymin / h)) - 1;
    const long iy1 = static_cast<long>(std::ceil(ymax / h)) + 1;

    std::vector<Complex> etas;
    etas.reserve(shapes.size());
    for (const ShapeSpec& s : shapes) etas.push_back(s.material.eta_at(ctx.k()));

    constexpr int S = kCoverageSubsamples;
    CellGrid grid;
    grid.h = h;
    for (long iy = iy0; iy <= iy1; ++iy) {
        for (long ix = ix0; ix <= ix1; ++ix) {
            const Point center = Point::xy(ix * h, iy * h);
            int covered = 0;
            Complex eta_sum{0.0, 0.0};
            for (int sy = 0; sy < S; ++sy) {
                for (int sx = 0; sx < S; ++sx) {
                    const Point p = Point::xy(center[0] + ((sx + 0.5) / S - 0.5) * h,
                                              center[1] + ((sy + 0.5) / S - 0.5) * h);
                    for (std::size_t s = shapes.size(); s-- > 0;) {
                        if (contains(shapes[s], p)) {
                            if (etas[s] != 0.0) {
                                ++covered;
                                eta_sum += etas[s];
                            }
                            break;
                        }
                    }
                }
            }
            if (covered == 0) continue;
            Cell cell;
            cell.center = center;
            cell.area = (covered == S * S) ? h * h : (static_cast<double>(covered) / (S * S)) * h * h;
            cell.eta = eta_sum / static_cast<double>(covered);
            grid.cells.push_back(cell);
        }
    }
    if (grid.cells.empty()) throw Error("discretize: no cell carries a nonzero contrast");
    return grid;
}

Complex self_cell_integral(const WaveContext& ctx, double radius) {
    require_2d(ctx, "self_cell_integral");
    const double k = ctx.k();
    const Complex h1 = hankel1_1(k * radius);
    return 0.25 * kI * ((2.0 * kPi * radius / k) * h1 + 4.0 * kI / (k * k));
}

std::vector<Complex> assemble_system_serial(const WaveContext& ctx, const CellGrid& grid) {
    require_2d(ctx, "assemble_system");
    const std::size_t n = grid.size();
    std::vector<Complex> m(n * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            const Cell& cell = grid.cells[c];
            const Complex a = (r == c) ? self_term(ctx, cell.area)
                                       : green2d(ctx.k(), grid.cells[r].center, cell.center) * cell.area;
            m[r * n + c] = (r == c ? 1.0 : 0.0) - a * cell.eta;
        }
    }
    return m;
}

std::vector<Complex> assemble_system(const WaveContext& ctx, const CellGrid& grid) {
    require_2d(ctx, "assemble_system");
    const long n = static_cast<long>(grid.size());
    std::vector<Complex> m(static_cast<std::size_t>(n * n));
    const double k = ctx.k();
    // G is symmetric: row r fills the pairs (r, c > r) in both triangles.
#pragma omp parallel for schedule(dynamic, 16)
    for (long r = 0; r < n; ++r) {
        const Cell& cr = grid.cells[r];
        m[r * n + r] = 1.0 - self_term(ctx, cr.area) * cr.eta;
        for (long c = r + 1; c < n; ++c) {
            const Cell& cc = grid.cells[c];
            const Complex g = green2d(k, cr.center, cc.center);
            m[r * n + c] = -g * cc.area * cc.eta;
            m[c * n + r] = -g * cr.area * cr.eta;
        }
    }
    return m;
}

std::vector<InducedCurrent> solve_lippmann_schwinger(const WaveContext& ctx, const CellGrid& grid,
                                                     std::span<const Direction> incidents) {
    require_2d(ctx, "solve_lippmann_schwinger");
    if (grid.cells.empty()) throw Error("solve_lippmann_schwinger: empty cell grid");
    const long n = static_cast<long>(grid.size());

    using RowMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    std::vector<Complex> storage = assemble_system(ctx, grid);
    Eigen::Map<RowMatrix> system(storage.data(), n, n);
    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(system);
    const double rcond = lu.rcond();
    if (!(rcond >= kMinRcond)) {
        throw SolverError("solve_lippmann_schwinger: system is numerically singular (rcond estimate " +
                              std::to_string(rcond) + ")",
                          rcond);
    }

    Eigen::MatrixXcd rhs(n, static_cast<long>(incidents.size()));
    for (long i = 0; i < n; ++i) {
        for (std::size_t d = 0; d < incidents.size(); ++d) {
            rhs(i, static_cast<long>(d)) = incident_plane_wave(ctx, incidents[d], grid.cells[i].center);
        }
    }
    const Eigen::MatrixXcd total = lu.solve(rhs);

    std::vector<InducedCurrent> out(incidents.size());
    for (std::size_t d = 0; d < incidents.size(); ++d) {
        out[d].values.resize(static_cast<std::size_t>(n));
        for (long i = 0; i < n; ++i) {
            out[d].values[i] = grid.cells[i].eta * total(i, static_cast<long>(d));
        }
    }
    return out;
}

InducedCurrent solve_lippmann_schwinger(const WaveContext& ctx, const CellGrid& grid, const Direction& d) {
    return solve_lippmann_schwinger(ctx, grid, std::span<const Direction>(&d, 1)).front();
}

Complex disk_series_coefficient(const WaveContext& ctx, double radius, Complex nsq, int m) {
    require_2d(ctx, "disk_series_coefficient");
    if (!(radius > 0.0)) throw DomainError("disk series: radius must be positive");
    if (nsq.imag() < 0.0) throw DomainError("disk series: Im(n^2) < 0 describes a gain medium");
    const double k = ctx.k();
    const Complex k1 = k * std::sqrt(nsq);
    const Complex z = k1 * radius;
    if (std::abs(z) > kMaxInteriorArgument) {
        throw DomainError("disk series: interior argument too large for the series evaluation");
    }
    m = std::abs(m);
    const double x = k * radius;
    const ExteriorValues ext = exterior(m, x);
    const Complex jz = bessel_j_complex(m, z);
    const Complex djz = 0.5 * (bessel_j_complex(m - 1, z) - bessel_j_complex(m + 1, z));
    const Complex num = k1 * djz * ext.j - k * ext.dj * jz;
    const Complex den = k * ext.dh * jz - k1 * djz * ext.h;
    if (den == 0.0) throw DomainError("disk series: vanishing denominator");
    return num / den;
}

std::vector<Complex> disk_series_farfield(const WaveContext& ctx, double radius, Complex nsq,
                                          const Direction& d, std::span<const Direction> angles) {
    require_2d(ctx, "disk_series_farfield");
    const int order = static_cast<int>(std::floor(ctx.k() * radius)) + 20;
    std::vector<Complex> coeff(static_cast<std::size_t>(order) + 1);
    for (int m = 0; m <= order; ++m) coeff[m] = disk_series_coefficient(ctx, radius, nsq, m);

    const Complex prefactor = std::sqrt(2.0 / (kPi * ctx.k())) * std::polar(1.0, -kPi / 4.0);
    std::vector<Complex> out;
    out.reserve(angles.size());
    for (const Direction& xhat : angles) {
        const double phi = xhat.angle() - d.angle();
        Complex sum = coeff[0];
        for (int m = 1; m <= order; ++m) sum += 2.0 * coeff[m] * std::cos(m * phi);
        out.push_back(prefactor * sum);
    }
    return out;
}

Complex scattered_near(const WaveContext& ctx, const CellGrid& grid, const InducedCurrent& current,
                       const Point& x) {
    require_2d(ctx, "scattered_near");
    Complex sum{0.0, 0.0};
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const Cell& c = grid.cells[j];
        if (distance(x, c.center) <= 0.5 * grid.h) {
            throw DomainError("scattered_near: evaluation point lies inside the scatterer support");
        }
        sum += green2d(ctx.k(), x, c.center) * (current.values[j] * c.area);
    }
    return sum;
}

std::array<Complex, 2> scattered_near_gradient(const WaveContext& ctx, const CellGrid& grid,
                                               const InducedCurrent& current, const Point& x) {
    require_2d(ctx, "scattered_near_gradient");
    const double k = ctx.k();
    std::array<Complex, 2> g{};
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const Cell& c = grid.cells[j];
        const double dx = x[0] - c.center[0];
        const double dy = x[1] - c.center[1];
        const double r = std::hypot(dx, dy);
        if (r <= 0.5 * grid.h) {
            throw DomainError("scattered_near_gradient: evaluation point lies inside the scatterer support");
        }
        // grad_x (i/4) H0(k r) = -(i/4) k H1(k r) (x - y)/r
        const Complex radial = -0.25 * kI * k * hankel1_1(k * r) * (current.values[j] * c.area) / r;
        g[0] += radial * dx;
        g[1] += radial * dy;
    }
    return g;
}

Complex scattered_far(const WaveContext& ctx, const CellGrid& grid, const InducedCurrent& current,
                      const Direction& xhat) {
    Complex sum{0.0, 0.0};
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const Cell& c = grid.cells[j];
        sum += green_farfield(ctx, xhat, c.center) * (current.values[j] * c.area);
    }
    return sum;
}

RingSamples ring_samples(const WaveContext& ctx, const CellGrid& grid, const InducedCurrent& current,
                         double radius) {
    RingSamples ring;
    ring.radius = radius;
    ring.values.resize(kRingNodes);
    ring.normal_derivatives.resize(kRingNodes);
    for (int j = 0; j < kRingNodes; ++j) {
        const double theta = 2.0 * j * kPi / (kRingNodes - 1);
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        const Point y = Point::xy(radius * c, radius * s);
        ring.values[j] = scattered_near(ctx, grid, current, y);
        const auto g = scattered_near_gradient(ctx, grid, current, y);
        ring.normal_derivatives[j] = g[0] * c + g[1] * s;
    }
    return ring;
}

Complex simpson_ring_rule(std::span<const Complex> f, double radius) {
    if (f.size() != static_cast<std::size_t>(kRingNodes)) {
        throw DomainError("simpson_ring_rule: the rule is defined for exactly 51 nodes, got " +
                          std::to_string(f.size()));
    }
    Complex sum{0.0, 0.0};
    for (int i = 0; i <= 24; ++i) sum += f[2 * i] + 4.0 * f[2 * i + 1] + f[2 * i + 2];
    return (kPi / 15.0) * (radius / 5.0) * sum;
}

std::vector<Complex> near_to_far_simpson(const WaveContext& ctx, const RingSamples& ring,
                                         std::span<const Direction> directions) {
    require_2d(ctx, "near_to_far_simpson");
    if (ring.values.size() != static_cast<std::size_t>(kRingNodes) ||
        ring.normal_derivatives.size() != static_cast<std::size_t>(kRingNodes)) {
        throw DomainError("near_to_far_simpson: ring data must hold exactly 51 samples");
    }
    const double k = ctx.k();
    const Complex prefactor = std::polar(1.0 / std::sqrt(8.0 * kPi * k), kPi / 4.0);
    std::vector<Complex> out;
    out.reserve(directions.size());
    std::vector<Complex> f(kRingNodes);
    for (const Direction& xhat : directions) {
        for (int j = 0; j < kRingNodes; ++j) {
            const double theta = 2.0 * j * kPi / (kRingNodes - 1);
            const double nx = std::cos(theta);
            const double ny = std::sin(theta);
            const double xdotnu = xhat[0] * nx + xhat[1] * ny;
            const Complex plane = std::exp(-kI * (k * ring.radius * xdotnu));
            f[j] = prefactor * (ring.values[j] * (-kI * k * xdotnu) - ring.normal_derivatives[j]) * plane;
        }
        out.push_back(simpson_ring_rule(f, ring.radius));
    }
    return out;
}

}  // namespace dsm
