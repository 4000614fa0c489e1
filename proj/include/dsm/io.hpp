#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dsm/dsm_core.hpp"
#include "dsm/measurement.hpp"
#include "dsm/shape.hpp"

namespace dsm {

/// Flat `key = value` configuration. `#` starts a comment; blank lines are
/// ignored. Throws ConfigError on malformed lines, duplicate keys, or keys
/// outside the documented set.
class Config {
public:
    static Config parse(std::string_view text);
    static Config load(const std::filesystem::path& path);

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    std::optional<std::string> get(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    long get_int(const std::string& key, long fallback) const;
    /// Comma-separated reals.
    std::vector<double> get_doubles(const std::string& key, std::vector<double> fallback) const;
    /// Comma-separated words.
    std::vector<std::string> get_words(const std::string& key, std::vector<std::string> fallback) const;
    /// Values of `prefix.1`, `prefix.2`, ... in numeric order.
    std::vector<std::string> indexed(const std::string& prefix) const;

    void set(const std::string& key, const std::string& value);

    static const std::vector<std::string>& known_keys();

private:
    std::map<std::string, std::string> values_;
};

double parse_double(std::string_view text, std::string_view what);
long parse_int(std::string_view text, std::string_view what);

/// `square cx cy side`, `ring cx cy outer inner`, `bar cx cy length thickness angle_deg`
/// or `disk cx cy radius`, followed by `eta=re,im` or `nsq=re,im`.
ShapeSpec parse_shape(std::string_view text);

/// Shortest round-trip free formatting: 17 significant digits.
std::string format_number(double v);

/// Writes to a sibling temporary file and renames it over `path`.
/// Throws IoError on failure.
void atomic_write(const std::filesystem::path& path, std::string_view bytes);

/// Sample file text. Header `# kind=far k=... incident_deg=...` (near files
/// add `radius=...`), then `theta_deg,re,im` or `x,y,re,im` rows.
std::string format_samples(const FieldSamples& s, double k);
void write_samples(const std::filesystem::path& path, const FieldSamples& s, double k);

struct LoadedSamples {
    FieldSamples samples;
    double k = 0.0;
};
/// Throws IoError when the file cannot be read and ConfigError when it does not parse.
LoadedSamples read_samples(const std::filesystem::path& path);
LoadedSamples parse_samples(std::string_view text);

/// `x,y,value` header then one row per node in grid order.
std::string format_indicator_csv(const IndicatorGrid& g);

/// Binary P6 pixmap, one pixel per node, row r holding iy = r (y grows
/// downward), through the colormap below.
std::string format_ppm(const IndicatorGrid& g);

/// v in [0, 1] to 8-bit RGB: channel c(t) = clamp(1.5 - |4v - t|, 0, 1) with
/// t = 3 (red), 2 (green), 1 (blue), scaled by 255 and rounded.
std::array<unsigned char, 3> colormap(double v);

}  // namespace dsm
