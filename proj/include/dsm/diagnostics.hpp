#pragma once

#include <cstdint>
#include <vector>

#include "dsm/geometry.hpp"
#include "dsm/measurement.hpp"
#include "dsm/special_fn.hpp"

namespace dsm {

struct LemmaPair {
    Point xj;
    Point xp;
    Complex correlation;
    double expected = 0.0;  // lemma_constant * Im G(xp, xj)
    double error = 0.0;
};

struct LemmaReport {
    int dim = 2;
    int nquad = 0;
    double rmax = 0.0;
    std::vector<LemmaPair> pairs;
    double max_error = 0.0;
};

/// Checks the far-field correlation identity on npairs random pairs with
/// |xj - xp| <= rmax. Pairs come from std::mt19937_64(seed); evaluation is
/// parallel over pairs. Throws DomainError for npairs < 1 or rmax < 0.
LemmaReport lemma_sweep(const WaveContext& ctx, double rmax, int npairs, int nquad, std::uint64_t seed = 1);

struct DecayRow {
    double r;
    double value;  // C_N Im G at distance r
};

/// nr equispaced distances from 0 to rmax. Throws DomainError for nr < 2.
std::vector<DecayRow> decay_curve(const WaveContext& ctx, double rmax, int nr);

struct RatioRow {
    double angle_deg;
    double modulus;
    double phase;
    /// Denominator below 1e-14 in modulus; modulus and phase are then NaN.
    bool flagged;
};

struct RatioTables {
    std::vector<RatioRow> far_over_kernel;       // u_inf / G_inf(., xp)
    std::vector<RatioRow> near_over_far;         // u_s / u_inf
    std::vector<RatioRow> kernel_near_over_far;  // G(., xp) / G_inf(., xp)
};

/// Per-angle complex quotients. Near samples must sit on a circle at the same
/// angles as the far directions. Throws DomainError otherwise.
RatioTables ratio_diagnostics(const WaveContext& ctx, const FieldSamples& near, const FieldSamples& far,
                              const Point& xp);

/// Standard deviation of the unflagged moduli divided by their mean.
double relative_spread(const std::vector<RatioRow>& rows);

}  // namespace dsm
