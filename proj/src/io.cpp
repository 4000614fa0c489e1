#include "dsm/io.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dsm/error.hpp"

namespace dsm {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::vector<std::string_view> tokens(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("failed reading " + path.string());
    return ss.str();
}

Complex parse_complex(std::string_view text) {
    const auto parts = split(text, ',');
    if (parts.size() == 1) return {parse_double(parts[0], "complex value"), 0.0};
    if (parts.size() == 2) return {parse_double(parts[0], "complex value"), parse_double(parts[1], "complex value")};
    throw ConfigError("malformed complex value '" + std::string(text) + "'");
}

}  // namespace

double parse_double(std::string_view text, std::string_view what) {
    text = trim(text);
    double v = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || text.empty() || !std::isfinite(v)) {
        throw ConfigError("invalid number for " + std::string(what) + ": '" + std::string(text) + "'");
    }
    return v;
}

long parse_int(std::string_view text, std::string_view what) {
    text = trim(text);
    long v = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || text.empty()) {
        throw ConfigError("invalid integer for " + std::string(what) + ": '" + std::string(text) + "'");
    }
    return v;
}

const std::vector<std::string>& Config::known_keys() {
    static const std::vector<std::string> keys = {
        "scenario",      "variant",       "k",          "grid.min",      "grid.max",
        "grid.h",        "near.radius",   "near.count", "far.count",     "far.source",
        "noise.epsilon", "noise.seed",    "incidents",  "cutoff",        "data.kinds",
        "output.dir",    "output.prefix", "forward.h",  "forward.max_cells", "forward.refine",
    };
    return keys;
}

Config Config::parse(std::string_view text) {
    Config cfg;
    int lineno = 0;
    for (std::string_view line : split(text, '\n')) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        const auto& known = known_keys();
        const bool indexed_shape = key.rfind("shape.", 0) == 0;
        if (!indexed_shape && std::find(known.begin(), known.end(), key) == known.end()) {
            throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
        if (cfg.has(key)) throw ConfigError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        cfg.values_[key] = value;
    }
    return cfg;
}

Config Config::load(const std::filesystem::path& path) { return parse(read_file(path)); }

std::optional<std::string> Config::get(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    return get(key).value_or(fallback);
}

double Config::get_double(const std::string& key, double fallback) const {
    const auto v = get(key);
    return v ? parse_double(*v, key) : fallback;
}

long Config::get_int(const std::string& key, long fallback) const {
    const auto v = get(key);
    return v ? parse_int(*v, key) : fallback;
}

std::vector<double> Config::get_doubles(const std::string& key, std::vector<double> fallback) const {
    const auto v = get(key);
    if (!v) return fallback;
    std::vector<double> out;
    for (std::string_view part : split(*v, ',')) out.push_back(parse_double(part, key));
    return out;
}

std::vector<std::string> Config::get_words(const std::string& key, std::vector<std::string> fallback) const {
    const auto v = get(key);
    if (!v) return fallback;
    std::vector<std::string> out;
    for (std::string_view part : split(*v, ',')) {
        if (part.empty()) throw ConfigError("empty entry in " + key);
        out.emplace_back(part);
    }
    return out;
}

std::vector<std::string> Config::indexed(const std::string& prefix) const {
    std::vector<std::pair<long, std::string>> found;
    const std::string head = prefix + ".";
    for (const auto& [key, value] : values_) {
        if (key.rfind(head, 0) != 0) continue;
        found.emplace_back(parse_int(std::string_view(key).substr(head.size()), key), value);
    }
    std::sort(found.begin(), found.end());
    std::vector<std::string> out;
    for (auto& f : found) out.push_back(std::move(f.second));
    return out;
}

void Config::set(const std::string& key, const std::string& value) { values_[key] = value; }

ShapeSpec parse_shape(std::string_view text) {
    const auto tok = tokens(text);
    if (tok.size() < 2) throw ConfigError("shape: expected '<kind> <numbers...> eta=|nsq='");
    const std::string_view mat = tok.back();
    Material material = Material::eta(1.0);
    if (mat.rfind("eta=", 0) == 0) {
        material = Material::eta(parse_complex(mat.substr(4)));
    } else if (mat.rfind("nsq=", 0) == 0) {
        material = Material::nsq(parse_complex(mat.substr(4)));
    } else {
        throw ConfigError("shape: last token must be eta=re,im or nsq=re,im");
    }
    std::vector<double> a;
    for (std::size_t i = 1; i + 1 < tok.size(); ++i) a.push_back(parse_double(tok[i], "shape"));
    const std::string_view kind = tok.front();
    auto need = [&](std::size_t n) {
        if (a.size() != n) throw ConfigError("shape " + std::string(kind) + ": expected " + std::to_string(n) + " numbers");
    };
    try {
        if (kind == "square") {
            need(3);
            return ShapeSpec::square(Point::xy(a[0], a[1]), a[2], material);
        }
        if (kind == "ring") {
            need(4);
            return ShapeSpec::ring_square(Point::xy(a[0], a[1]), a[2], a[3], material);
        }
        if (kind == "bar") {
            need(5);
            return ShapeSpec::bar(Point::xy(a[0], a[1]), a[2], a[3], a[4] * kPi / 180.0, material);
        }
        if (kind == "disk") {
            need(3);
            return ShapeSpec::disk(Point::xy(a[0], a[1]), a[2], material);
        }
    } catch (const DomainError& e) {
        throw ConfigError(std::string("shape: ") + e.what());
    }
    throw ConfigError("unknown shape kind '" + std::string(kind) + "'");
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void atomic_write(const std::filesystem::path& path, std::string_view bytes) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp.string());
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        out.flush();
        if (!out) {
            std::error_code ignored;
            std::filesystem::remove(tmp, ignored);
            throw IoError("failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot move output into place at " + path.string());
    }
}

std::string format_samples(const FieldSamples& s, double k) {
    s.validate();
    std::string out = "# kind=";
    out += s.kind == FieldKind::Far ? "far" : "near";
    out += " k=" + format_number(k);
    out += " incident_deg=" + format_number(s.incident.angle() * 180.0 / kPi);
    if (s.kind == FieldKind::Near) out += " radius=" + format_number(s.radius);
    out += '\n';
    out += s.kind == FieldKind::Far ? "theta_deg,re,im\n" : "x,y,re,im\n";
    for (std::size_t j = 0; j < s.size(); ++j) {
        const Point& p = s.locations[j];
        if (s.kind == FieldKind::Far) {
            double deg = std::atan2(p[1], p[0]) * 180.0 / kPi;
            if (deg < 0.0) deg += 360.0;
            out += format_number(deg);
        } else {
            out += format_number(p[0]) + "," + format_number(p[1]);
        }
        out += "," + format_number(s.values[j].real()) + "," + format_number(s.values[j].imag()) + "\n";
    }
    return out;
}

void write_samples(const std::filesystem::path& path, const FieldSamples& s, double k) {
    atomic_write(path, format_samples(s, k));
}

LoadedSamples parse_samples(std::string_view text) {
    auto lines = split(text, '\n');
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (lines.size() < 2 || lines[0].rfind("#", 0) != 0) throw ConfigError("sample file: missing header");

    LoadedSamples loaded;
    FieldSamples& s = loaded.samples;
    bool have_kind = false;
    bool have_k = false;
    bool have_incident = false;
    for (std::string_view t : tokens(lines[0].substr(1))) {
        const auto eq = t.find('=');
        if (eq == std::string_view::npos) throw ConfigError("sample file: malformed header field");
        const std::string_view key = t.substr(0, eq);
        const std::string_view value = t.substr(eq + 1);
        if (key == "kind") {
            if (value == "far") {
                s.kind = FieldKind::Far;
            } else if (value == "near") {
                s.kind = FieldKind::Near;
            } else {
                throw ConfigError("sample file: unknown kind");
            }
            have_kind = true;
        } else if (key == "k") {
            loaded.k = parse_double(value, "k");
            have_k = true;
        } else if (key == "incident_deg") {
            s.incident = Direction::from_degrees(parse_double(value, "incident_deg"));
            have_incident = true;
        } else if (key == "radius") {
            s.radius = parse_double(value, "radius");
        } else {
            throw ConfigError("sample file: unknown header field '" + std::string(key) + "'");
        }
    }
    if (!have_kind || !have_k || !have_incident) throw ConfigError("sample file: incomplete header");

    const std::size_t ncols = s.kind == FieldKind::Far ? 3 : 4;
    for (std::size_t i = 2; i < lines.size(); ++i) {
        const auto cols = split(lines[i], ',');
        if (cols.size() != ncols) throw ConfigError("sample file: row " + std::to_string(i + 1) + " has wrong column count");
        if (s.kind == FieldKind::Far) {
            s.locations.push_back(Direction::from_degrees(parse_double(cols[0], "theta_deg")).vec());
        } else {
            s.locations.push_back(Point::xy(parse_double(cols[0], "x"), parse_double(cols[1], "y")));
        }
        s.values.emplace_back(parse_double(cols[ncols - 2], "re"), parse_double(cols[ncols - 1], "im"));
        s.ids.push_back(i - 2);
    }
    if (s.values.empty()) throw ConfigError("sample file: no rows");
    try {
        s.validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("sample file: ") + e.what());
    }
    return loaded;
}

LoadedSamples read_samples(const std::filesystem::path& path) { return parse_samples(read_file(path)); }

std::string format_indicator_csv(const IndicatorGrid& g) {
    std::string out = "x,y,value\n";
    out.reserve(g.values.size() * 48);
    for (std::size_t i = 0; i < g.values.size(); ++i) {
        const Point p = g.grid.node(i);
        out += format_number(p[0]);
        out += ',';
        out += format_number(p[1]);
        out += ',';
        out += format_number(g.values[i]);
        out += '\n';
    }
    return out;
}

std::array<unsigned char, 3> colormap(double v) {
    v = std::clamp(v, 0.0, 1.0);
    auto channel = [v](double t) {
        const double c = std::clamp(1.5 - std::abs(4.0 * v - t), 0.0, 1.0);
        return static_cast<unsigned char>(std::lround(255.0 * c));
    };
    return {channel(3.0), channel(2.0), channel(1.0)};
}

std::string format_ppm(const IndicatorGrid& g) {
    std::string out = "P6\n" + std::to_string(g.grid.nx) + " " + std::to_string(g.grid.ny) + "\n255\n";
    out.reserve(out.size() + 3 * g.values.size());
    for (double v : g.values) {
        const auto rgb = colormap(v);
        out.append(reinterpret_cast<const char*>(rgb.data()), 3);
    }
    return out;
}

}  // namespace dsm
