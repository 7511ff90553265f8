#pragma once

#include <gmp.h>

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "rainbow/configuration.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/pipeline.hpp"
#include "rainbow/separation.hpp"

namespace rainbow {

namespace detail {

// 9 significant digits; display only.
inline std::string decimal(const Rational& q) {
    mpf_class f(q, 256);
    char buf[64];
    gmp_snprintf(buf, sizeof buf, "%.9Fg", f.get_mpf_t());
    return buf;
}

class Viewport {
public:
    static constexpr int size = 800;
    static constexpr int margin = 40;

    explicit Viewport(const std::vector<Point>& pts) {
        lo_ = hi_ = pts.front();
        for (const Point& p : pts)
            for (std::size_t i = 0; i < 2; ++i) {
                lo_[i] = std::min(lo_[i], p[i]);
                hi_[i] = std::max(hi_[i], p[i]);
            }
        Rational span = std::max(hi_[0] - lo_[0], hi_[1] - lo_[1]);
        if (sgn(span) == 0) span = 1;
        scale_ = Rational(size - 2 * margin) / span;
    }

    Rational x(const Point& p) const { return (p[0] - lo_[0]) * scale_ + margin; }
    Rational y(const Point& p) const { return Rational(size - margin) - (p[1] - lo_[1]) * scale_; }
    const Point& lo() const { return lo_; }
    const Point& hi() const { return hi_; }

private:
    Point lo_, hi_;
    Rational scale_;
};

// Intersection of a line with the bounding box of the data.
inline std::vector<Point> clip_line(const Hyperplane& h, const Point& lo, const Point& hi) {
    std::vector<Point> hits;
    auto add = [&](Point p) {
        if (p[0] < lo[0] || p[0] > hi[0] || p[1] < lo[1] || p[1] > hi[1]) return;
        if (std::find(hits.begin(), hits.end(), p) == hits.end()) hits.push_back(std::move(p));
    };
    const Rational &a = h.normal[0], &b = h.normal[1], &c = h.offset;
    if (sgn(b) != 0)
        for (const Rational& x : {lo[0], hi[0]}) add(Point{x, (c - a * x) / b});
    if (sgn(a) != 0)
        for (const Rational& y : {lo[1], hi[1]}) add(Point{(c - b * y) / a, y});
    if (hits.size() > 2) hits.resize(2);
    return hits;
}

}  // namespace detail

/// Deterministic 800x800 drawing: every point, O, the hulls of the Q_i and
/// the trimming cuts as dashed lines.
inline std::string render_svg(const ColoredConfiguration& cfg, const ResultBundle& bundle, bool show_cuts = true) {
    if (cfg.dimension != 2) throw GateError("render_svg: unsupported dimension (only d = 2)");
    static const char* palette[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    std::vector<Point> all = flatten(cfg).points;
    if (bundle.origin.dimension() == 2) all.push_back(bundle.origin);
    if (all.empty()) throw InputError("nothing to draw");
    const detail::Viewport vp(all);
    using detail::decimal;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
    out << "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
    for (std::size_t c = 0; c < bundle.q_points.size(); ++c) {
        const auto hull = convex_hull_2d(bundle.q_points[c]);
        if (hull.size() < 2) continue;
        out << "<polygon class=\"hull\" fill=\"" << palette[c % 6] << "\" fill-opacity=\"0.15\" stroke=\""
            << palette[c % 6] << "\" points=\"";
        for (std::size_t i = 0; i < hull.size(); ++i)
            out << (i ? " " : "") << decimal(vp.x(hull[i])) << ',' << decimal(vp.y(hull[i]));
        out << "\"/>\n";
    }
    if (show_cuts)
        for (const TrimStep& step : bundle.trace.steps) {
            const auto ends = detail::clip_line(step.cut, vp.lo(), vp.hi());
            if (ends.size() != 2) continue;
            out << "<line class=\"cut\" stroke=\"gray\" stroke-dasharray=\"6,4\" x1=\"" << decimal(vp.x(ends[0]))
                << "\" y1=\"" << decimal(vp.y(ends[0])) << "\" x2=\"" << decimal(vp.x(ends[1])) << "\" y2=\""
                << decimal(vp.y(ends[1])) << "\"/>\n";
        }
    for (std::size_t c = 0; c < cfg.colors.size(); ++c)
        for (std::size_t i = 0; i < cfg.colors[c].size(); ++i) {
            const Point& p = cfg.colors[c][i];
            const bool in_q = c < bundle.q_indices.size() &&
                              std::binary_search(bundle.q_indices[c].begin(), bundle.q_indices[c].end(), i);
            out << "<circle class=\"point" << (in_q ? " q" : "") << "\" cx=\"" << decimal(vp.x(p)) << "\" cy=\""
                << decimal(vp.y(p)) << "\" r=\"" << (in_q ? 6 : 4) << "\" fill=\"" << palette[c % 6] << '"'
                << (in_q ? " stroke=\"black\" stroke-width=\"1.5\"" : "") << "/>\n";
        }
    if (bundle.origin.dimension() == 2)
        out << "<circle class=\"origin\" cx=\"" << decimal(vp.x(bundle.origin)) << "\" cy=\""
            << decimal(vp.y(bundle.origin)) << "\" r=\"5\" fill=\"black\"/>\n";
    out << "</svg>\n";
    return out.str();
}

}  // namespace rainbow
