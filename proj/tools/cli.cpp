#include "cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

#include "dsm/diagnostics.hpp"
#include "dsm/error.hpp"
#include "dsm/green_kernel.hpp"
#include "dsm/io.hpp"
#include "dsm/pipeline.hpp"

namespace dsm::cli {

namespace fs = std::filesystem;

namespace {

constexpr double kLemmaTolerance = 1e-8;
constexpr double kLemmaConstantTolerance = 1e-10;
constexpr double kDiskOracleTolerance = 0.02;

/// Short label for a noise level: 0, 0.2, 0.05.
std::string eps_label(double eps) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", eps);
    return buf;
}

const char* kind_name(FieldKind k) { return k == FieldKind::Far ? "far" : "near"; }

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
}

FarSource far_source_from(const std::string& s) {
    if (s == "direct") return FarSource::Direct;
    if (s == "simpson") return FarSource::Simpson;
    throw ConfigError("far.source must be 'direct' or 'simpson'");
}

SamplingGrid grid_from(const Config& cfg) {
    const double lo = cfg.get_double("grid.min", -2.0);
    const double hi = cfg.get_double("grid.max", 2.0);
    const double h = cfg.get_double("grid.h", 0.01);
    try {
        return SamplingGrid::make(lo, hi, lo, hi, h);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
}

WaveContext context_from(const Config& cfg) {
    try {
        return WaveContext(cfg.get_double("k", 2.0 * kPi), 2);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
}

std::vector<Direction> incidents_from(const Config& cfg) {
    std::vector<Direction> out;
    for (double deg : cfg.get_doubles("incidents", {})) out.push_back(Direction::from_degrees(deg));
    return out;
}

void apply_kinds(const Config& cfg, ReproduceOptions& o) {
    o.use_near = o.use_far = false;
    for (const std::string& w : cfg.get_words("data.kinds", {"near", "far"})) {
        if (w == "near") {
            o.use_near = true;
        } else if (w == "far") {
            o.use_far = true;
        } else {
            throw ConfigError("data.kinds entries must be 'near' or 'far'");
        }
    }
}

/// Shared reading of the measurement and forward keys.
ReproduceOptions options_from(const Config& cfg) {
    ReproduceOptions o;
    o.scenario = cfg.get_string("scenario", "");
    o.variant = cfg.get_string("variant", "");
    o.epsilons = cfg.get_doubles("noise.epsilon", {});
    const long seed = cfg.get_int("noise.seed", 0);
    if (seed < 0) throw ConfigError("noise.seed must be nonnegative");
    o.seed = static_cast<std::uint64_t>(seed);
    o.grid = grid_from(cfg);
    o.cutoff = cfg.get_double("cutoff", std::nan(""));
    o.near_radius = cfg.get_double("near.radius", 4.0);
    o.near_count = static_cast<int>(cfg.get_int("near.count", 50));
    o.far_count = static_cast<int>(cfg.get_int("far.count", 50));
    if (o.near_count < 1 || o.far_count < 1) throw ConfigError("sample counts must be positive");
    o.far_source = far_source_from(cfg.get_string("far.source", "direct"));
    o.incidents = incidents_from(cfg);
    o.forward.h = cfg.get_double("forward.h", 0.02);
    const long max_cells = cfg.get_int("forward.max_cells", 5000);
    if (max_cells < 1) throw ConfigError("forward.max_cells must be positive");
    o.forward.max_cells = static_cast<std::size_t>(max_cells);
    const std::string refine = cfg.get_string("forward.refine", "true");
    if (refine != "true" && refine != "false") throw ConfigError("forward.refine must be true or false");
    o.forward.refine = refine == "true";
    apply_kinds(cfg, o);
    return o;
}

int synthesize(const Config& cfg, std::optional<std::uint64_t> seed_override, const fs::path& out_dir,
               std::ostream& out) {
    const WaveContext ctx = context_from(cfg);
    ReproduceOptions o = options_from(cfg);
    if (seed_override) o.seed = *seed_override;

    std::vector<ShapeSpec> shapes;
    std::vector<Direction> incidents = o.incidents;
    std::string prefix = cfg.get_string("output.prefix", "");
    for (const std::string& line : cfg.indexed("shape")) shapes.push_back(parse_shape(line));
    if (shapes.empty()) {
        if (o.scenario.empty()) throw ConfigError("synthesize: config names neither a scenario nor shapes");
        const Scenario sc = build_scenario(o.scenario, o.variant);
        shapes = sc.shapes;
        if (incidents.empty()) incidents = sc.incidents;
        if (prefix.empty()) prefix = sc.name + (sc.variant.empty() ? "" : "-" + sc.variant);
    }
    if (incidents.empty()) incidents = {Direction::from_degrees(45.0)};
    if (prefix.empty()) prefix = "custom";
    std::vector<double> eps = o.epsilons.empty() ? std::vector<double>{0.0} : o.epsilons;

    const ForwardResult fwd = simulate(ctx, shapes, incidents, o.forward);
    ensure_dir(out_dir);
    int written = 0;
    for (std::size_t i = 0; i < incidents.size(); ++i) {
        std::vector<FieldSamples> clean;
        if (o.use_near) clean.push_back(measure_near(ctx, fwd, i, o.near_radius, o.near_count));
        if (o.use_far) clean.push_back(measure_far(ctx, fwd, i, o.far_count, o.far_source));
        for (const FieldSamples& c : clean) {
            for (double e : eps) {
                std::string name = prefix + "_" + kind_name(c.kind) + "_inc" + std::to_string(i);
                if (e != 0.0) name += "_eps" + eps_label(e) + "_seed" + std::to_string(incident_seed(o.seed, i));
                write_samples(out_dir / (name + ".csv"), add_noise(c, NoiseSpec{e, incident_seed(o.seed, i)}),
                              ctx.k());
                ++written;
            }
        }
    }
    out << "cells " << fwd.grid.size() << " h " << format_number(fwd.grid.h) << " levels " << fwd.levels
        << (fwd.converged ? " converged" : " not-converged") << "\n";
    out << "wrote " << written << " sample files to " << out_dir.string() << "\n";
    return kSuccess;
}

int image_cmd(const std::optional<Config>& cfg, const std::vector<std::string>& files, const fs::path& prefix,
              std::ostream& out) {
    if (files.empty()) throw ConfigError("image: no data files given");
    std::vector<FieldSamples> data;
    double k = 0.0;
    for (const std::string& f : files) {
        LoadedSamples l = read_samples(f);
        if (data.empty()) {
            k = l.k;
        } else {
            const FieldSamples& first = data.front();
            if (l.samples.kind != first.kind) throw ConfigError("image: " + f + " mixes near and far data");
            if (l.k != k) throw ConfigError("image: " + f + " has a different wavenumber");
            if (l.samples.size() != first.size()) throw ConfigError("image: " + f + " has a different sample count");
            for (const FieldSamples& d : data) {
                if (d.incident == l.samples.incident) {
                    throw ConfigError("image: " + f + " repeats an incident direction");
                }
            }
        }
        data.push_back(std::move(l.samples));
    }
    if (cfg && cfg->has("k") && cfg->get_double("k", k) != k) {
        throw ConfigError("image: config wavenumber differs from the data files");
    }
    const WaveContext ctx(k, 2);
    const SamplingGrid grid = cfg ? grid_from(*cfg) : SamplingGrid::standard();
    const IndicatorGrid img = image(ctx, data, grid);

    if (prefix.has_parent_path()) ensure_dir(prefix.parent_path());
    fs::path csv = prefix;
    csv += ".csv";
    fs::path ppm = prefix;
    ppm += ".ppm";
    atomic_write(csv, format_indicator_csv(img));
    atomic_write(ppm, format_ppm(img));
    const Point peak = img.argmax_point();
    out << "grid " << grid.nx << "x" << grid.ny << " argmax " << format_number(peak[0]) << " "
        << format_number(peak[1]) << "\n";
    return kSuccess;
}

std::string report_text(const ReproduceResult& r) {
    std::string s;
    s += "scenario " + r.scenario.name + "\n";
    s += "variant " + (r.scenario.variant.empty() ? std::string("-") : r.scenario.variant) + "\n";
    s += "cells " + std::to_string(r.forward.grid.size()) + "\n";
    s += "forward_h " + format_number(r.forward.grid.h) + "\n";
    s += "forward_levels " + std::to_string(r.forward.levels) + "\n";
    s += "forward_converged " + std::string(r.forward.converged ? "true" : "false") + "\n";
    s += "forward_last_change " + format_number(r.forward.last_change) + "\n";
    s += "cutoff " + format_number(r.cutoff) + "\n";
    for (const ImagingRun& run : r.runs) {
        const Point peak = run.image.argmax_point();
        s += std::string("run kind=") + kind_name(run.kind) + " eps=" + eps_label(run.epsilon) +
             " argmax=" + format_number(peak[0]) + "," + format_number(peak[1]) +
             " components=" + std::to_string(run.components.size()) + "\n";
        for (const Component& c : run.components) {
            s += "  component size=" + std::to_string(c.size()) + " centroid=" + format_number(c.centroid[0]) + "," +
                 format_number(c.centroid[1]) + " bbox=" + format_number(c.xmin) + "," + format_number(c.xmax) +
                 "," + format_number(c.ymin) + "," + format_number(c.ymax) + "\n";
        }
    }
    return s;
}

int reproduce_cmd(const std::string& id, const std::string& variant, const std::optional<Config>& cfg,
                  const std::optional<std::vector<double>>& eps, std::optional<std::uint64_t> seed,
                  const fs::path& out_dir, std::ostream& out) {
    const Config c = cfg.value_or(Config{});
    const WaveContext ctx = context_from(c);
    ReproduceOptions o = options_from(c);
    o.scenario = id;
    if (!variant.empty()) o.variant = variant;
    if (eps) o.epsilons = *eps;
    if (seed) o.seed = *seed;
    for (double e : o.epsilons) {
        if (!(e >= 0.0 && e <= 1.0)) throw ConfigError("noise levels must lie in [0, 1]");
    }

    const ReproduceResult r = reproduce(ctx, o);
    ensure_dir(out_dir);
    const std::string stem = r.scenario.name + (r.scenario.variant.empty() ? "" : "-" + r.scenario.variant);
    for (const ImagingRun& run : r.runs) {
        const std::string name = stem + "_" + kind_name(run.kind) + "_eps" + eps_label(run.epsilon);
        atomic_write(out_dir / (name + ".csv"), format_indicator_csv(run.image));
        atomic_write(out_dir / (name + ".ppm"), format_ppm(run.image));
    }
    const std::string report = report_text(r);
    atomic_write(out_dir / (stem + "_report.txt"), report);
    out << report;
    return kSuccess;
}

std::string lemma_csv(const LemmaReport& rep) {
    std::string s = "xj,xp,correlation_re,correlation_im,expected,error\n";
    auto point = [](const Point& p) {
        std::string t;
        for (int i = 0; i < p.dim; ++i) t += (i ? " " : "") + format_number(p[i]);
        return t;
    };
    for (const LemmaPair& p : rep.pairs) {
        s += point(p.xj) + "," + point(p.xp) + "," + format_number(p.correlation.real()) + "," +
             format_number(p.correlation.imag()) + "," + format_number(p.expected) + "," + format_number(p.error) +
             "\n";
    }
    return s;
}

double disk_oracle_error() {
    const WaveContext ctx;
    const double radius = 0.3;
    const Complex nsq{1.5, 0.0};
    const Direction d = Direction::from_angle(0.0);
    const ShapeSpec disk = ShapeSpec::disk(Point::xy(0.0, 0.0), radius, Material::nsq(nsq));
    ForwardOptions fo;
    fo.h = 1.0 / 40.0;
    fo.refine = false;
    const ForwardResult fwd = simulate(ctx, std::span<const ShapeSpec>(&disk, 1), std::span<const Direction>(&d, 1), fo);
    const std::vector<Direction> dirs = far_angles(50);
    const std::vector<Complex> series = disk_series_farfield(ctx, radius, nsq, d, dirs);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < dirs.size(); ++j) {
        num += std::norm(scattered_far(ctx, fwd.grid, fwd.currents[0], dirs[j]) - series[j]);
        den += std::norm(series[j]);
    }
    return std::sqrt(num / den);
}

int verify_cmd(std::optional<int> nquad, std::optional<int> dim, int pairs, std::uint64_t seed, const fs::path& out_dir,
               std::ostream& out) {
    if (dim && *dim != 2 && *dim != 3) throw ConfigError("--dim must be 2 or 3");
    if (nquad && *nquad < 1) throw ConfigError("--nquad must be positive");
    if (pairs < 1) throw ConfigError("--pairs must be positive");

    std::vector<int> dims = dim ? std::vector<int>{*dim} : std::vector<int>{2, 3};
    std::string report;
    std::vector<std::string> failures;
    auto record = [&](const std::string& metric, double value, double tol) {
        const bool ok = value <= tol;
        report += metric + " " + format_number(value) + " tol " + format_number(tol) + (ok ? " PASS\n" : " FAIL\n");
        if (!ok) failures.push_back(metric);
    };

    ensure_dir(out_dir);
    for (int dm : dims) {
        const WaveContext ctx = WaveContext::unit_wavelength(dm);
        const int nq = nquad.value_or(dm == 2 ? 512 : 64);
        const LemmaReport rep = lemma_sweep(ctx, 4.0, pairs, nq, seed);
        record("lemma_max_error_" + std::to_string(dm) + "d", rep.max_error, kLemmaTolerance);
        const double expected_c = dm == 2 ? 1.0 / ctx.k() : 1.0;
        record("lemma_constant_" + std::to_string(dm) + "d", std::abs(lemma_constant(ctx) - expected_c),
               kLemmaConstantTolerance);
        atomic_write(out_dir / ("lemma_pairs_" + std::to_string(dm) + "d.csv"), lemma_csv(rep));
        std::string decay = "r,value\n";
        for (const DecayRow& row : decay_curve(ctx, 4.0, 401)) {
            decay += format_number(row.r) + "," + format_number(row.value) + "\n";
        }
        atomic_write(out_dir / ("decay_" + std::to_string(dm) + "d.csv"), decay);
    }
    if (!dim || *dim == 2) record("disk_oracle_rel_l2", disk_oracle_error(), kDiskOracleTolerance);

    atomic_write(out_dir / "verify_report.txt", report);
    out << report;
    if (!failures.empty()) {
        for (const std::string& f : failures) out << "verification failed: " << f << "\n";
        return kVerificationFailed;
    }
    return kSuccess;
}

void apply_thread_override() {
    const char* env = std::getenv("DSM_NUM_THREADS");
    if (env == nullptr || *env == '\0') return;
    const long n = parse_int(env, "DSM_NUM_THREADS");
    if (n < 1) throw ConfigError("DSM_NUM_THREADS must be a positive integer");
    omp_set_num_threads(static_cast<int>(n));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Direct sampling imaging for inverse acoustic scattering"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;

    auto* syn = app.add_subcommand("synthesize", "Simulate near- and far-field data files");
    syn->add_option("--config", config_path, "Config file")->required();
    syn->add_option("--out", out_path, "Output directory")->default_val(".");
    syn->add_option("--seed", seed, "Noise seed (overrides noise.seed)");

    std::vector<std::string> files;
    auto* img = app.add_subcommand("image", "Indicator grid from sample files");
    img->add_option("--config", config_path, "Config file for grid settings");
    img->add_option("--out", out_path, "Output path prefix (.csv and .ppm are appended)")->default_val("indicator");
    img->add_option("files", files, "Sample files, one per incident direction")->required();

    std::optional<int> nquad;
    std::optional<int> dim;
    int pairs = 200;
    auto* ver = app.add_subcommand("verify", "Check the correlation identity and the disk oracle");
    ver->add_option("--nquad", nquad, "Quadrature size for both dimensions");
    ver->add_option("--dim", dim, "Only this dimension (2 or 3)");
    ver->add_option("--pairs", pairs, "Random point pairs")->default_val(200);
    ver->add_option("--seed", seed, "Pair sampling seed");
    ver->add_option("--out", out_path, "Report directory")->default_val(".");

    std::string id;
    std::string variant;
    std::optional<std::vector<double>> eps;
    auto* rep = app.add_subcommand("reproduce", "Run a preset end to end");
    rep->add_option("scenario", id, "ex1 .. ex7")->required();
    rep->add_option("--variant", variant, "close | high-contrast | single-incident");
    rep->add_option("--config", config_path, "Config file");
    rep->add_option("--eps", eps, "Noise levels")->delimiter(',');
    rep->add_option("--seed", seed, "Noise seed (overrides noise.seed)");
    rep->add_option("--out", out_path, "Output directory")->default_val(".");

    std::vector<std::string> argv_store{"dsm"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (std::string& a : argv_store) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsageError;
    }

    try {
        apply_thread_override();
        std::optional<Config> cfg;
        if (!config_path.empty()) cfg = Config::load(config_path);
        if (*syn) return synthesize(*cfg, seed, out_path, out);
        if (*img) return image_cmd(cfg, files, out_path, out);
        if (*ver) return verify_cmd(nquad, dim, pairs, seed.value_or(1), out_path, out);
        return reproduce_cmd(id, variant, cfg, eps, seed, out_path, out);
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kIoError;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kVerificationFailed;
    }
}

}  // namespace dsm::cli
