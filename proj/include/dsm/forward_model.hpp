#pragma once

#include <span>
#include <vector>

#include "dsm/geometry.hpp"
#include "dsm/shape.hpp"
#include "dsm/special_fn.hpp"

namespace dsm {

/// One volume element of the discretized scatterer.
struct Cell {
    Point center;
    double area = 0.0;
    Complex eta{0.0, 0.0};
};

/// Square-lattice discretization of the scatterer support.
///
/// Interior cells have area h^2. Cells cut by a curved or misaligned boundary
/// keep their lattice center and carry the covered fraction of h^2.
struct CellGrid {
    std::vector<Cell> cells;
    double h = 0.0;

    std::size_t size() const noexcept { return cells.size(); }
    double total_area() const;
};

/// I_j = eta_j u(y_j) at every cell center.
struct InducedCurrent {
    std::vector<Complex> values;
};

/// exp(i k x.d).
Complex incident_plane_wave(const WaveContext& ctx, const Direction& d, const Point& x);

/// Sub-samples per cell edge used to measure boundary-cell coverage.
inline constexpr int kCoverageSubsamples = 16;

/// Lattice cells of pitch h (centers at integer multiples of h) that overlap
/// any shape with nonzero contrast. Where shapes overlap, later shapes win.
/// Throws DomainError unless 0 < h <= lambda/10, and Error when no cell
/// carries contrast.
CellGrid discretize(const WaveContext& ctx, std::span<const ShapeSpec> shapes, double h);

/// Solves the collocation form of the Lippmann-Schwinger equation
///   u(x_m) - sum_j A_mj eta_j u(x_j) = u_inc(x_m)
/// with A_mj = G(x_m, x_j) |tau_j| off the diagonal and the closed-form
/// integral of G over the area-equivalent disk on it. One LU factorization
/// serves every incident direction. 2D only.
/// Throws SolverError when the reciprocal condition estimate drops below 1e-13.
std::vector<InducedCurrent> solve_lippmann_schwinger(const WaveContext& ctx, const CellGrid& grid,
                                                     std::span<const Direction> incidents);

InducedCurrent solve_lippmann_schwinger(const WaveContext& ctx, const CellGrid& grid, const Direction& d);

/// Integral of G(0, y) over the disk |y| <= radius (2D):
/// (i/4) [ (2 pi R / k) H_1^(1)(k R) + 4 i / k^2 ].
Complex self_cell_integral(const WaveContext& ctx, double radius);

/// Row-major system matrix I - A diag(eta), parallel assembly.
std::vector<Complex> assemble_system(const WaveContext& ctx, const CellGrid& grid);
/// Single-threaded reference for assemble_system.
std::vector<Complex> assemble_system_serial(const WaveContext& ctx, const CellGrid& grid);

/// Far field of a penetrable circular cylinder centered at the origin, from the
/// partial-wave series truncated at |m| <= floor(k radius) + 20.
/// Uses the convention u_s ~ exp(ikr)/sqrt(r) u_inf.
/// Throws DomainError for dim != 2, radius <= 0, Im(nsq) < 0, or an interior
/// argument k sqrt(nsq) radius with modulus above 20.
std::vector<Complex> disk_series_farfield(const WaveContext& ctx, double radius, Complex nsq,
                                          const Direction& d, std::span<const Direction> angles);

/// Coefficient b_m of H_m^(1)(kr) e^{im(theta - theta_d)} i^m in the scattered
/// field of the same disk problem.
Complex disk_series_coefficient(const WaveContext& ctx, double radius, Complex nsq, int m);

/// u_s(x) = sum_j G(x, y_j) I_j |tau_j|. Throws DomainError when x is within
/// h/2 of a cell center.
Complex scattered_near(const WaveContext& ctx, const CellGrid& grid, const InducedCurrent& current,
                       const Point& x);

/// Gradient of scattered_near with respect to x.
std::array<Complex, 2> scattered_near_gradient(const WaveContext& ctx, const CellGrid& grid,
                                               const InducedCurrent& current, const Point& x);

/// u_inf(xhat) = sum_j G_inf(xhat, y_j) I_j |tau_j|.
Complex scattered_far(const WaveContext& ctx, const CellGrid& grid, const InducedCurrent& current,
                      const Direction& xhat);

/// Node count of the ring rule: theta_j = 2 j pi / 50, j = 0..50.
inline constexpr int kRingNodes = 51;

/// u_s and its outward normal derivative on the 51 ring nodes (the first and
/// last node coincide).
struct RingSamples {
    double radius = 5.0;
    std::vector<Complex> values;
    std::vector<Complex> normal_derivatives;
};

RingSamples ring_samples(const WaveContext& ctx, const CellGrid& grid, const InducedCurrent& current,
                         double radius = 5.0);

/// Composite Simpson rule over the ring nodes:
///   (pi/15) (R/5) sum_{i=0}^{24} (f_2i + 4 f_2i+1 + f_2i+2),
/// i.e. the arc-length integral of f over the circle of radius R.
/// Throws DomainError unless f has exactly 51 entries.
Complex simpson_ring_rule(std::span<const Complex> f, double radius = 5.0);

/// Far field from near-field ring data via the Kirchhoff-Helmholtz
/// representation u_inf(xhat) = e^{i pi/4}/sqrt(8 pi k) int (u_s d_nu e^{-ik xhat.y}
///   - d_nu u_s e^{-ik xhat.y}) ds(y), integrated with simpson_ring_rule.
std::vector<Complex> near_to_far_simpson(const WaveContext& ctx, const RingSamples& ring,
                                         std::span<const Direction> directions);

}  // namespace dsm
