// Acceptance gate: one PASS/FAIL line per criterion, tolerances fixed here.
// Exit status is nonzero when any criterion fails.

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "dsm/diagnostics.hpp"
#include "dsm/green_kernel.hpp"
#include "dsm/io.hpp"
#include "dsm/pipeline.hpp"

using namespace dsm;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> details;

    void check(bool ok, const std::string& what) {
        pass = pass && ok;
        details.push_back(std::string(ok ? "ok   " : "MISS ") + what);
    }
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

int failures = 0;

void criterion(int id, const std::string& title, double budget_s, const std::function<void(Outcome&)>& body) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.check(false, std::string("exception: ") + e.what());
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.check(elapsed < budget_s, "runtime " + num(elapsed) + " s < " + num(budget_s) + " s");
    if (!o.pass) ++failures;
    std::printf("%s criterion %d: %s\n", o.pass ? "PASS" : "FAIL", id, title.c_str());
    for (const std::string& d : o.details) std::printf("       %s\n", d.c_str());
    std::fflush(stdout);
}

const WaveContext ctx;

struct Images {
    IndicatorGrid near;
    IndicatorGrid far;
};

Images image_scenario(const Scenario& s, const ForwardResult& fwd, double eps, std::uint64_t seed,
                      const SamplingGrid& grid = SamplingGrid::standard()) {
    std::vector<FieldSamples> near;
    std::vector<FieldSamples> far;
    for (std::size_t i = 0; i < s.incidents.size(); ++i) {
        near.push_back(add_noise(measure_near(ctx, fwd, i), NoiseSpec{eps, incident_seed(seed, i)}));
        far.push_back(add_noise(measure_far(ctx, fwd, i), NoiseSpec{eps, incident_seed(seed, i)}));
    }
    return {image(ctx, near, grid), image(ctx, far, grid)};
}

double nearest(const std::vector<Component>& comps, const Point& truth) {
    double best = INFINITY;
    for (const Component& c : comps) best = std::min(best, distance(c.centroid, truth));
    return best;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main() {
    criterion(1, "far-field correlation identity on 200 random pairs, |xj - xp| <= 4", 5.0, [](Outcome& o) {
        const LemmaReport r2 = lemma_sweep(WaveContext::unit_wavelength(2), 4.0, 200, 512, 1);
        const LemmaReport r3 = lemma_sweep(WaveContext::unit_wavelength(3), 4.0, 200, 64, 1);
        o.check(r2.max_error <= 1e-8, "2D max error " + num(r2.max_error) + " <= 1e-8 (nquad 512)");
        o.check(r3.max_error <= 1e-8, "3D max error " + num(r3.max_error) + " <= 1e-8 (nquad 64)");
    });

    criterion(2, "lemma constant closed forms C = 1/k (2D), 1 (3D)", 1.0, [](Outcome& o) {
        const WaveContext c2 = WaveContext::unit_wavelength(2);
        const double e2 = std::abs(lemma_constant(c2) - 1.0 / c2.k());
        const double e3 = std::abs(lemma_constant(WaveContext::unit_wavelength(3)) - 1.0);
        o.check(e2 <= 1e-10, "2D |C - 1/k| = " + num(e2));
        o.check(e3 <= 1e-10, "3D |C - 1| = " + num(e3));
    });

    criterion(3, "point-source law |Phi_inf - |J0(k r)|| <= 0.02 for r <= 1 on the 401x401 grid", 30.0,
              [](Outcome& o) {
                  const Point z = Point::xy(0.35, -0.25);
                  FieldSamples data = make_far_samples(50, incident_d1());
                  for (std::size_t j = 0; j < data.size(); ++j) {
                      data.values[j] = green_farfield(ctx, Direction(data.locations[j]), z);
                  }
                  const IndicatorGrid img = indicator_grid(ctx, data, SamplingGrid::standard());
                  double worst = 0.0;
                  for (std::size_t i = 0; i < img.values.size(); ++i) {
                      const double r = distance(img.grid.node(i), z);
                      if (r <= 1.0) worst = std::max(worst, std::abs(img.values[i] - std::abs(bessel_j(0, ctx.k() * r))));
                  }
                  o.check(worst <= 0.02, "max deviation " + num(worst));
              });

    criterion(4, "Example 1 argmax within 0.05 of the origin, eps in {0, 0.2}, 10 seeds", 120.0, [](Outcome& o) {
        const Scenario s = build_scenario("ex1");
        const ForwardResult fwd = simulate(ctx, s.shapes, s.incidents);
        double worst_near = 0.0;
        double worst_far = 0.0;
        // eps = 0 data are seed independent (add_noise returns an exact copy), so one image covers all seeds.
        const Images clean = image_scenario(s, fwd, 0.0, 0);
        worst_near = norm(clean.near.argmax_point());
        worst_far = norm(clean.far.argmax_point());
        o.check(worst_near <= 0.05 && worst_far <= 0.05,
                "eps 0: near " + num(worst_near) + ", far " + num(worst_far));
        worst_near = worst_far = 0.0;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const Images noisy = image_scenario(s, fwd, 0.2, seed);
            worst_near = std::max(worst_near, norm(noisy.near.argmax_point()));
            worst_far = std::max(worst_far, norm(noisy.far.argmax_point()));
        }
        o.check(worst_near <= 0.05, "eps 0.2 near: worst argmax distance " + num(worst_near));
        o.check(worst_far <= 0.05, "eps 0.2 far: worst argmax distance " + num(worst_far));
    });

    criterion(5, "Example 2 at cutoff 0.75: two components near the true centers, eps in {0, 0.2}", 120.0,
              [](Outcome& o) {
                  const Scenario s = build_scenario("ex2");
                  const ForwardResult fwd = simulate(ctx, s.shapes, s.incidents);
                  for (double eps : {0.0, 0.2}) {
                      const Images im = image_scenario(s, fwd, eps, 1);
                      for (const auto& [name, img] : {std::pair{"near", &im.near}, std::pair{"far", &im.far}}) {
                          const auto comps = superlevel_components(*img, 0.75);
                          double worst = 0.0;
                          for (const Point& t : s.truth_centroids) worst = std::max(worst, nearest(comps, t));
                          o.check(comps.size() == 2 && worst <= 0.1,
                                  std::string(name) + " eps " + num(eps) + ": " + std::to_string(comps.size()) +
                                      " components, worst centroid offset " + num(worst));
                      }
                  }
              });

    criterion(6, "Example 3 resolution: 0.5 separation -> 2 components, 0.2 -> 1 (cutoff 0.75, eps 0)", 120.0,
              [](Outcome& o) {
                  for (const auto& [variant, expected] : {std::pair{"", 2u}, std::pair{"close", 1u}}) {
                      const Scenario s = build_scenario("ex3", variant);
                      const ForwardResult fwd = simulate(ctx, s.shapes, s.incidents);
                      const Images im = image_scenario(s, fwd, 0.0, 0);
                      const std::size_t n_near = superlevel_components(im.near, 0.75).size();
                      const std::size_t n_far = superlevel_components(im.far, 0.75).size();
                      o.check(n_near == expected && n_far == expected,
                              std::string(*variant ? "0.2 separation" : "0.5 separation") + ": near " +
                                  std::to_string(n_near) + ", far " + std::to_string(n_far) + " components (want " +
                                  std::to_string(expected) + ")");
                  }
              });

    criterion(7, "penetrable disk far field vs partial-wave series, relative L2 <= 2% at h = 1/40", 60.0,
              [](Outcome& o) {
                  const ShapeSpec disk = ShapeSpec::disk(Point::xy(0, 0), 0.3, Material::nsq(1.5));
                  const Direction d = incident_d1();
                  const CellGrid g = discretize(ctx, std::span(&disk, 1), 1.0 / 40.0);
                  const InducedCurrent c = solve_lippmann_schwinger(ctx, g, d);
                  const std::vector<Direction> dirs = far_angles(50);
                  const std::vector<Complex> series = disk_series_farfield(ctx, 0.3, 1.5, d, dirs);
                  double num_ = 0.0;
                  double den = 0.0;
                  for (std::size_t j = 0; j < dirs.size(); ++j) {
                      num_ += std::norm(scattered_far(ctx, g, c, dirs[j]) - series[j]);
                      den += std::norm(series[j]);
                  }
                  const double err = std::sqrt(num_ / den);
                  o.check(err <= 0.02, "relative L2 error " + num(err));
              });

    criterion(8, "Simpson near-to-far rule: exact on constants; <= 0.5% vs direct far field for Example 1", 10.0,
              [](Outcome& o) {
                  const Complex c{1.7, -0.4};
                  const std::vector<Complex> f(kRingNodes, c);
                  const double e_const = std::abs(simpson_ring_rule(f) - 10.0 * kPi * c) / std::abs(10.0 * kPi * c);
                  o.check(e_const <= 1e-14, "constant integrand relative error " + num(e_const));

                  const Scenario s = build_scenario("ex1");
                  const ForwardResult fwd = simulate(ctx, s.shapes, s.incidents);
                  const FieldSamples direct = measure_far(ctx, fwd, 0, 50, FarSource::Direct);
                  const FieldSamples simpson = measure_far(ctx, fwd, 0, 50, FarSource::Simpson);
                  double worst = 0.0;
                  double peak = 0.0;
                  for (std::size_t j = 0; j < direct.size(); ++j) {
                      worst = std::max(worst, std::abs(simpson.values[j] - direct.values[j]));
                      peak = std::max(peak, std::abs(direct.values[j]));
                  }
                  o.check(worst / peak <= 0.005, "Example 1 max relative error " + num(worst / peak));
              });

    criterion(9, "indicator range [0,1], constant far-field denominator, invariance under data scaling", 60.0,
              [](Outcome& o) {
                  const Scenario s = build_scenario("ex1");
                  const ForwardResult fwd = simulate(ctx, s.shapes, s.incidents);
                  const SamplingGrid grid = SamplingGrid::standard();
                  const FieldSamples near = add_noise(measure_near(ctx, fwd, 0), NoiseSpec{0.2, 3});
                  const FieldSamples far = add_noise(measure_far(ctx, fwd, 0), NoiseSpec{0.2, 3});
                  const IndicatorGrid raw_near = evaluate_indicator(ctx, near, grid);
                  const IndicatorGrid raw_far = evaluate_indicator(ctx, far, grid);
                  bool in_range = true;
                  for (const IndicatorGrid* g : {&raw_near, &raw_far}) {
                      for (double v : g->values) in_range = in_range && v >= 0.0 && v <= 1.0;
                  }
                  o.check(in_range, "all raw near and far values in [0, 1]");

                  const FarIndicator phi(ctx, far);
                  double spread = 0.0;
                  for (int i = 0; i < 100; ++i) {
                      const Point xp = grid.node(static_cast<std::size_t>((i * 1609u + 17u) % grid.size()));
                      spread = std::max(spread, std::abs(phi.kernel_norm_at(xp) - phi.kernel_norm()));
                  }
                  o.check(spread <= 1e-14, "far-field denominator spread over 100 nodes " + num(spread));

                  FieldSamples near_s = near;
                  FieldSamples far_s = far;
                  for (Complex& v : near_s.values) v *= Complex(7.0, -3.0);
                  for (Complex& v : far_s.values) v *= Complex(7.0, -3.0);
                  const IndicatorGrid sn = evaluate_indicator(ctx, near_s, grid);
                  const IndicatorGrid sf = evaluate_indicator(ctx, far_s, grid);
                  double dev = 0.0;
                  for (std::size_t i = 0; i < grid.size(); ++i) {
                      dev = std::max(dev, std::abs(sn.values[i] - raw_near.values[i]));
                      dev = std::max(dev, std::abs(sf.values[i] - raw_far.values[i]));
                  }
                  o.check(dev <= 1e-12, "max change under scaling by 7-3i " + num(dev));
                  o.check(sn.argmax() == raw_near.argmax() && sf.argmax() == raw_far.argmax(), "argmax unchanged");
              });

    criterion(10, "cracks at cutoff 0.7 (eps 0): ex6 aspect >= 3; ex7 {d1,d2} box >= 0.6 x 0.6", 180.0,
              [](Outcome& o) {
                  {
                      const Scenario s = build_scenario("ex6");
                      const ForwardResult fwd = simulate(ctx, s.shapes, s.incidents);
                      const Images im = image_scenario(s, fwd, 0.0, 0);
                      for (const auto& [name, img] : {std::pair{"near", &im.near}, std::pair{"far", &im.far}}) {
                          const Component c = superlevel_components(*img, 0.7).at(0);
                          const double aspect = std::max(c.width(), c.height()) /
                                                std::max(std::min(c.width(), c.height()), img->grid.h);
                          o.check(aspect >= 3.0, std::string("ex6 ") + name + ": box " + num(c.width()) + " x " +
                                                     num(c.height()) + ", aspect " + num(aspect));
                      }
                  }
                  {
                      const Scenario s = build_scenario("ex7");
                      const ForwardResult fwd = simulate(ctx, s.shapes, s.incidents);
                      const Images im = image_scenario(s, fwd, 0.0, 0);
                      for (const auto& [name, img] : {std::pair{"near", &im.near}, std::pair{"far", &im.far}}) {
                          const Component c = superlevel_components(*img, 0.7).at(0);
                          o.check(c.width() >= 0.6 && c.height() >= 0.6,
                                  std::string("ex7 ") + name + ": box " + num(c.width()) + " x " + num(c.height()));
                      }
                  }
              });

    criterion(11, "reproduce twice with the same seed gives byte-identical CSV and pixmap files", 120.0,
              [](Outcome& o) {
                  const fs::path root = fs::temp_directory_path() / ("dsm_acceptance_" + std::to_string(::getpid()));
                  fs::remove_all(root);
                  std::ostringstream sink;
                  for (const char* run : {"a", "b"}) {
                      const int code = dsm::cli::run({"reproduce", "ex1", "--eps", "0.2", "--seed", "7", "--out",
                                                      (root / run).string()},
                                                     sink, sink);
                      o.check(code == 0, std::string("run ") + run + " exit code " + std::to_string(code));
                  }
                  int compared = 0;
                  bool same = true;
                  for (const auto& e : fs::directory_iterator(root / "a")) {
                      const auto ext = e.path().extension();
                      if (ext != ".csv" && ext != ".ppm") continue;
                      same = same && slurp(e.path()) == slurp(root / "b" / e.path().filename());
                      ++compared;
                  }
                  o.check(same && compared == 4, std::to_string(compared) + " files compared, identical: " +
                                                     (same ? "yes" : "no"));
                  fs::remove_all(root);
              });

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
