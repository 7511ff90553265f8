#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <iterator>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/geometry.hpp"

namespace rainbow {

/// d+1 pairwise disjoint color classes of n points each in R^d.
struct ColoredConfiguration {
    std::size_t dimension = 0;
    std::vector<std::vector<Point>> colors;

    std::size_t color_count() const { return colors.size(); }
    std::size_t n() const { return colors.empty() ? 0 : colors[0].size(); }
    const Point& at(std::size_t color, std::size_t index) const { return colors[color][index]; }

    friend bool operator==(const ColoredConfiguration&, const ColoredConfiguration&) = default;
};

/// Union of the color classes, with each point's color and in-color index.
struct FlatPoints {
    std::vector<Point> points;
    std::vector<std::size_t> color;
    std::vector<std::size_t> index;
};

inline FlatPoints flatten(const ColoredConfiguration& cfg) {
    FlatPoints f;
    for (std::size_t c = 0; c < cfg.colors.size(); ++c)
        for (std::size_t i = 0; i < cfg.colors[c].size(); ++i) {
            f.points.push_back(cfg.colors[c][i]);
            f.color.push_back(c);
            f.index.push_back(i);
        }
    return f;
}

namespace detail {

// Planar general-position test in O(N^2 log N): for each i, sort the
// directions towards later points modulo pi and look for repeats.
inline std::optional<std::vector<std::size_t>> planar_collinear_triple(std::span<const Point> pts) {
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) {
        struct Dir {
            Rational x, y;
            std::size_t j;
        };
        std::vector<Dir> dirs;
        for (std::size_t j = i + 1; j < n; ++j) {
            Rational dx = pts[j][0] - pts[i][0], dy = pts[j][1] - pts[i][1];
            if (sgn(dy) < 0 || (sgn(dy) == 0 && sgn(dx) < 0)) {
                dx = -dx;
                dy = -dy;
            }
            dirs.push_back({dx, dy, j});
        }
        auto cross = [](const Dir& a, const Dir& b) { return sgn(a.x * b.y - a.y * b.x); };
        std::stable_sort(dirs.begin(), dirs.end(), [&](const Dir& a, const Dir& b) {
            const int c = cross(a, b);
            return c != 0 ? c > 0 : a.j < b.j;
        });
        std::optional<std::pair<std::size_t, std::size_t>> best;
        for (std::size_t k = 0; k + 1 < dirs.size(); ++k) {
            if (cross(dirs[k], dirs[k + 1]) != 0) continue;
            // dirs[k].j < dirs[k+1].j inside a run; the run start gives the smallest pair
            std::pair<std::size_t, std::size_t> cand{dirs[k].j, dirs[k + 1].j};
            if (!best || cand < *best) best = cand;
        }
        if (best) return std::vector<std::size_t>{i, best->first, best->second};
    }
    return std::nullopt;
}

}  // namespace detail

/// Throws ValidationError naming the first violated invariant.
inline void validate(const ColoredConfiguration& cfg) {
    const std::size_t d = cfg.dimension;
    if (d < 1) throw ValidationError("dimension", "dimension must be at least 1");
    if (cfg.colors.size() != d + 1)
        throw ValidationError("color count", "expected " + std::to_string(d + 1) + " colors, got " +
                                                 std::to_string(cfg.colors.size()));
    for (std::size_t c = 0; c < cfg.colors.size(); ++c)
        if (cfg.colors[c].empty()) throw ValidationError("empty", "color " + std::to_string(c));
    for (std::size_t c = 1; c < cfg.colors.size(); ++c)
        if (cfg.colors[c].size() != cfg.colors[0].size())
            throw ValidationError("size mismatch",
                                  "color 0 has " + std::to_string(cfg.colors[0].size()) +
                                      " points, color " + std::to_string(c) + " has " +
                                      std::to_string(cfg.colors[c].size()));
    const FlatPoints flat = flatten(cfg);
    for (std::size_t k = 0; k < flat.points.size(); ++k)
        if (flat.points[k].dimension() != d)
            throw ValidationError("dimension", "point " + std::to_string(flat.index[k]) +
                                                   " of color " + std::to_string(flat.color[k]));

    std::vector<std::size_t> order(flat.points.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return flat.points[a] < flat.points[b] || (flat.points[a] == flat.points[b] && a < b);
    });
    for (std::size_t k = 0; k + 1 < order.size(); ++k)
        if (flat.points[order[k]] == flat.points[order[k + 1]]) {
            const std::size_t a = order[k], b = order[k + 1];
            throw ValidationError("duplicate", "color " + std::to_string(flat.color[a]) + " index " +
                                                   std::to_string(flat.index[a]) + " equals color " +
                                                   std::to_string(flat.color[b]) + " index " +
                                                   std::to_string(flat.index[b]));
        }

    const auto violation = d == 2 ? detail::planar_collinear_triple(flat.points)
                                  : general_position_check(flat.points, d);
    if (violation) {
        std::string w;
        for (std::size_t k : *violation) {
            if (!w.empty()) w += ", ";
            w += "(color " + std::to_string(flat.color[k]) + ", index " +
                 std::to_string(flat.index[k]) + ")";
        }
        throw ValidationError("general position", w);
    }
}

enum class Format { Json, Plain };

inline Rational rational_from_json(const nlohmann::json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(Integer(v.dump(), 10));
    throw InputError("parse", "coordinates must be strings (\"p/q\" or decimal) or integers");
}

inline ColoredConfiguration configuration_from_json(const nlohmann::json& j) {
    ColoredConfiguration cfg;
    try {
        if (!j.is_object() || !j.contains("dimension") || !j.contains("colors"))
            throw InputError("parse", "configuration needs \"dimension\" and \"colors\"");
        const long long d = j.at("dimension").get<long long>();
        if (d < 1) throw InputError("parse", "dimension must be positive");
        cfg.dimension = static_cast<std::size_t>(d);
        for (const auto& color : j.at("colors")) {
            auto& pts = cfg.colors.emplace_back();
            for (const auto& pt : color) {
                Point p;
                for (const auto& x : pt) p.coords.push_back(rational_from_json(x));
                pts.push_back(std::move(p));
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw InputError("parse", std::string("malformed configuration: ") + e.what());
    }
    return cfg;
}

inline nlohmann::json point_to_json(const Point& p) {
    nlohmann::json a = nlohmann::json::array();
    for (const Rational& x : p.coords) a.push_back(to_string(x));
    return a;
}

inline Point point_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw InputError("parse", "point must be an array");
    Point p;
    for (const auto& x : j) p.coords.push_back(rational_from_json(x));
    return p;
}

/// Parses and validates a configuration.
inline ColoredConfiguration load_configuration(std::istream& in, Format format = Format::Json) {
    ColoredConfiguration cfg;
    if (format == Format::Json) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            throw InputError("parse", std::string("malformed JSON: ") + e.what());
        }
        cfg = configuration_from_json(j);
    } else {
        std::string line;
        std::size_t lineno = 0;
        std::optional<std::size_t> dim;
        while (std::getline(in, line)) {
            ++lineno;
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            std::istringstream ls(line);
            std::vector<std::string> tok{std::istream_iterator<std::string>(ls),
                                         std::istream_iterator<std::string>()};
            if (tok.empty()) continue;
            if (tok.size() < 2)
                throw InputError("parse", "line " + std::to_string(lineno) + ": too few fields");
            if (!dim) dim = tok.size() - 1;
            if (tok.size() - 1 != *dim)
                throw InputError("parse", "line " + std::to_string(lineno) + ": dimension changes");
            if (!std::all_of(tok[0].begin(), tok[0].end(), [](unsigned char c) { return std::isdigit(c); }) ||
                tok[0].size() > 6)
                throw InputError("parse", "line " + std::to_string(lineno) + ": bad color index");
            const std::size_t c = std::stoul(tok[0]);
            if (c >= cfg.colors.size()) cfg.colors.resize(c + 1);
            Point p;
            for (std::size_t k = 1; k < tok.size(); ++k) p.coords.push_back(parse_rational(tok[k]));
            cfg.colors[c].push_back(std::move(p));
        }
        if (!dim) throw InputError("parse", "empty plain configuration");
        cfg.dimension = *dim;
    }
    validate(cfg);
    return cfg;
}

inline ColoredConfiguration load_configuration(const std::string& text, Format format = Format::Json) {
    std::istringstream in(text);
    return load_configuration(in, format);
}

/// Serializes a valid configuration; rationals are written exactly ("1/3").
inline std::string save_configuration(const ColoredConfiguration& cfg, Format format = Format::Json) {
    validate(cfg);
    std::ostringstream out;
    if (format == Format::Plain) {
        out << "# dimension " << cfg.dimension << "\n";
        for (std::size_t c = 0; c < cfg.colors.size(); ++c)
            for (const Point& p : cfg.colors[c]) {
                out << c;
                for (const Rational& x : p.coords) out << ' ' << to_string(x);
                out << '\n';
            }
        return out.str();
    }
    out << "{\n  \"dimension\": " << cfg.dimension << ",\n  \"colors\": [\n";
    for (std::size_t c = 0; c < cfg.colors.size(); ++c) {
        out << "    [";
        for (std::size_t i = 0; i < cfg.colors[c].size(); ++i) {
            out << (i ? ", " : "") << point_to_json(cfg.colors[c][i]).dump();
        }
        out << "]" << (c + 1 < cfg.colors.size() ? "," : "") << "\n";
    }
    out << "  ]\n}\n";
    return out.str();
}

/// 64-bit FNV-1a, used to fingerprint canonical configuration bytes.
inline std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) s[static_cast<std::size_t>(i)] = digits[h & 0xf];
    return s;
}

// ---------------------------------------------------------------------------
// Seeded generation

enum class Distribution { UniformBox, Gaussian, MomentCurvePerturbed };

inline Distribution parse_distribution(const std::string& s) {
    if (s == "uniform-box") return Distribution::UniformBox;
    if (s == "gaussian") return Distribution::Gaussian;
    if (s == "moment-curve-perturbed") return Distribution::MomentCurvePerturbed;
    throw InputError("unknown distribution '" + s + "'");
}

inline std::string to_string(Distribution d) {
    switch (d) {
        case Distribution::UniformBox: return "uniform-box";
        case Distribution::Gaussian: return "gaussian";
        case Distribution::MomentCurvePerturbed: return "moment-curve-perturbed";
    }
    return "?";
}

struct GeneratorSpec {
    std::uint64_t seed = 0;
    std::size_t n = 1;
    std::size_t d = 2;
    Distribution distribution = Distribution::UniformBox;
    std::uint64_t jitter = 1000;  ///< denominator bound of the rational jitter
    std::size_t max_retries = 1000;
};

/// Portable bounded draw (std distributions are implementation-defined).
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do x = rng();
    while (x >= limit);
    return x % bound;
}

inline std::int64_t uniform_between(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

namespace detail {

inline Point sample_point(std::mt19937_64& rng, const GeneratorSpec& spec, std::size_t total) {
    const std::uint64_t J = std::max<std::uint64_t>(spec.jitter, 1);
    auto jitter = [&](std::uint64_t scale) {
        return Rational(Integer(static_cast<unsigned long>(uniform_below(rng, J))),
                        Integer(static_cast<unsigned long>(J * scale)));
    };
    Point p;
    switch (spec.distribution) {
        case Distribution::UniformBox:
            for (std::size_t k = 0; k < spec.d; ++k)
                p.coords.push_back(Rational(static_cast<long>(uniform_below(rng, 100))) + jitter(1));
            break;
        case Distribution::Gaussian:
            // Irwin-Hall sum of 12 uniforms: integer-only, so bit-for-bit portable
            for (std::size_t k = 0; k < spec.d; ++k) {
                long sum = -600;
                for (int r = 0; r < 12; ++r) sum += static_cast<long>(uniform_below(rng, 100));
                p.coords.push_back(Rational(sum) + jitter(1));
            }
            break;
        case Distribution::MomentCurvePerturbed: {
            const std::int64_t T = std::max<std::int64_t>(10, 3 * static_cast<std::int64_t>(total));
            const Rational t(static_cast<long>(uniform_between(rng, -T, T)));
            Rational power = t;
            for (std::size_t k = 0; k < spec.d; ++k) {
                Rational coord = power;
                for (std::size_t e = 0; e < k; ++e) coord /= T;
                p.coords.push_back(coord + jitter(10));
                power *= t;
            }
            break;
        }
    }
    for (auto& x : p.coords) x.canonicalize();
    return p;
}

inline bool compatible(const Point& p, const std::vector<Point>& existing, std::size_t d) {
    for (const Point& q : existing)
        if (q == p) return false;
    if (existing.size() < d) return true;
    std::vector<Point> tuple(d + 1);
    tuple[d] = p;
    return for_each_combination(existing.size(), d, [&](const std::vector<std::size_t>& idx) {
        for (std::size_t k = 0; k < d; ++k) tuple[k] = existing[idx[k]];
        return orientation(tuple) != Sign::Zero;
    });
}

}  // namespace detail

/// Deterministic seeded configuration; degenerate samples are redrawn.
inline ColoredConfiguration generate(const GeneratorSpec& spec) {
    if (spec.n < 1 || spec.d < 1) throw InputError("generator needs n >= 1 and d >= 1");
    std::mt19937_64 rng(spec.seed);
    const std::size_t total = spec.n * (spec.d + 1);
    for (std::size_t attempt = 0; attempt < 8; ++attempt) {
        ColoredConfiguration cfg;
        cfg.dimension = spec.d;
        cfg.colors.assign(spec.d + 1, {});
        std::vector<Point> placed;
        for (std::size_t c = 0; c <= spec.d; ++c)
            for (std::size_t i = 0; i < spec.n; ++i) {
                std::size_t tries = 0;
                Point p = detail::sample_point(rng, spec, total);
                while (!detail::compatible(p, placed, spec.d)) {
                    if (++tries > spec.max_retries)
                        throw Error("generation", "could not place point " + std::to_string(i) +
                                                      " of color " + std::to_string(c) +
                                                      " in general position");
                    p = detail::sample_point(rng, spec, total);
                }
                placed.push_back(p);
                cfg.colors[c].push_back(std::move(p));
            }
        try {
            validate(cfg);
            return cfg;
        } catch (const ValidationError&) {
            // lower-dimensional degeneracies the incremental test does not see
        }
    }
    throw Error("generation", "could not generate a configuration in general position");
}

}  // namespace rainbow
