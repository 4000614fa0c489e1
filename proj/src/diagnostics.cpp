#include "dsm/diagnostics.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "dsm/error.hpp"
#include "dsm/green_kernel.hpp"

namespace dsm {

namespace {

constexpr double kFlagThreshold = 1e-14;

Point random_unit(std::mt19937_64& gen, int dim) {
    std::normal_distribution<double> n01;
    for (;;) {
        const Point v = dim == 2 ? Point::xy(n01(gen), n01(gen)) : Point::xyz(n01(gen), n01(gen), n01(gen));
        const double len = norm(v);
        if (len > 1e-8) return (1.0 / len) * v;
    }
}

RatioRow quotient(double angle_deg, Complex num, Complex den) {
    RatioRow row{angle_deg, 0.0, 0.0, false};
    if (std::abs(den) < kFlagThreshold) {
        row.flagged = true;
        row.modulus = row.phase = std::numeric_limits<double>::quiet_NaN();
        return row;
    }
    const Complex q = num / den;
    row.modulus = std::abs(q);
    row.phase = std::arg(q);
    return row;
}

}  // namespace

LemmaReport lemma_sweep(const WaveContext& ctx, double rmax, int npairs, int nquad, std::uint64_t seed) {
    if (npairs < 1) throw DomainError("lemma_sweep: npairs must be at least 1");
    if (!(rmax >= 0.0)) throw DomainError("lemma_sweep: rmax must be nonnegative");
    const int dim = ctx.dim();

    LemmaReport report;
    report.dim = dim;
    report.nquad = nquad;
    report.rmax = rmax;
    report.pairs.resize(static_cast<std::size_t>(npairs));

    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (LemmaPair& p : report.pairs) {
        // xp in the unit ball, xj at a uniform distance in [0, rmax] from it.
        p.xp = std::pow(unit(gen), 1.0 / dim) * random_unit(gen, dim);
        p.xj = p.xp + (rmax * unit(gen)) * random_unit(gen, dim);
    }

    const double c = lemma_constant(ctx);
    const double scale = im_green_scale(ctx);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < npairs; ++i) {
        LemmaPair& p = report.pairs[i];
        p.correlation = farfield_correlation(ctx, p.xj, p.xp, nquad);
        p.expected = c * scaled_im_green(ctx, p.xp, p.xj) / scale;
        p.error = std::abs(p.correlation - p.expected);
    }
    for (const LemmaPair& p : report.pairs) report.max_error = std::max(report.max_error, p.error);
    return report;
}

std::vector<DecayRow> decay_curve(const WaveContext& ctx, double rmax, int nr) {
    if (nr < 2) throw DomainError("decay_curve: need at least two distances");
    if (!(rmax > 0.0)) throw DomainError("decay_curve: rmax must be positive");
    std::vector<DecayRow> rows(static_cast<std::size_t>(nr));
    Point origin;
    origin.dim = ctx.dim();
    for (int i = 0; i < nr; ++i) {
        const double r = rmax * i / (nr - 1);
        Point x = origin;
        x.x[0] = r;
        rows[i] = {r, scaled_im_green(ctx, origin, x)};
    }
    return rows;
}

RatioTables ratio_diagnostics(const WaveContext& ctx, const FieldSamples& near, const FieldSamples& far,
                              const Point& xp) {
    if (near.kind != FieldKind::Near || far.kind != FieldKind::Far) {
        throw DomainError("ratio_diagnostics: expected one near and one far sample set");
    }
    near.validate();
    far.validate();
    if (near.size() != far.size()) throw DomainError("ratio_diagnostics: sample counts differ");

    RatioTables t;
    for (std::size_t j = 0; j < far.size(); ++j) {
        const Direction xhat(far.locations[j]);
        const Point& y = near.locations[j];
        const double near_angle = std::atan2(y[1], y[0]);
        if (std::abs(std::remainder(near_angle - xhat.angle(), 2.0 * kPi)) > 1e-9) {
            throw DomainError("ratio_diagnostics: near and far samples are not at matched angles");
        }
        double deg = xhat.angle() * 180.0 / kPi;
        if (deg < 0.0) deg += 360.0;
        const Complex ginf = green_farfield(ctx, xhat, xp);
        t.far_over_kernel.push_back(quotient(deg, far.values[j], ginf));
        t.near_over_far.push_back(quotient(deg, near.values[j], far.values[j]));
        t.kernel_near_over_far.push_back(quotient(deg, green(ctx, y, xp), ginf));
    }
    return t;
}

double relative_spread(const std::vector<RatioRow>& rows) {
    double sum = 0.0;
    double sum2 = 0.0;
    int n = 0;
    for (const RatioRow& r : rows) {
        if (r.flagged) continue;
        sum += r.modulus;
        sum2 += r.modulus * r.modulus;
        ++n;
    }
    if (n == 0) throw DegenerateDataError("relative_spread: every row is flagged");
    const double mean = sum / n;
    const double var = std::max(0.0, sum2 / n - mean * mean);
    return std::sqrt(var) / mean;
}

}  // namespace dsm
