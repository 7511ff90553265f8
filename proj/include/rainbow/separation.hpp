#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rainbow/combinatorics.hpp"
#include "rainbow/configuration.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/geometry.hpp"
#include "rainbow/lp.hpp"

namespace rainbow {

/// Strict separator with `a` on the negative side and `b` on the positive
/// side, or nullopt when the convex hulls intersect or touch.
inline std::optional<Hyperplane> strictly_separating_hyperplane(const std::vector<Point>& a,
                                                                const std::vector<Point>& b) {
    if (a.empty() || b.empty()) throw InputError("separation needs two nonempty point sets");
    const std::size_t d = a[0].dimension();
    // variables: w (d), c, t; maximize t
    const std::size_t n = d + 2;
    std::vector<std::vector<Rational>> A;
    std::vector<Rational> rhs;
    auto add = [&](std::vector<Rational> row, Rational bound) {
        A.push_back(std::move(row));
        rhs.push_back(std::move(bound));
    };
    for (const Point& p : a) {
        if (p.dimension() != d) throw InputError("dimension mismatch");
        std::vector<Rational> row(n);
        for (std::size_t i = 0; i < d; ++i) row[i] = p[i];
        row[d] = -1;
        row[d + 1] = 1;
        add(std::move(row), 0);  // w.p + t <= c
    }
    for (const Point& p : b) {
        if (p.dimension() != d) throw InputError("dimension mismatch");
        std::vector<Rational> row(n);
        for (std::size_t i = 0; i < d; ++i) row[i] = -p[i];
        row[d] = 1;
        row[d + 1] = 1;
        add(std::move(row), 0);  // c + t <= w.p
    }
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<Rational> up(n), down(n);
        up[i] = 1;
        down[i] = -1;
        add(std::move(up), 1);
        add(std::move(down), 1);
    }
    std::vector<Rational> cap(n);
    cap[d + 1] = 1;
    add(cap, 1);
    std::vector<Rational> objective(n);
    objective[d + 1] = 1;
    const lp::Result r = lp::maximize(A, rhs, objective);
    if (r.status != lp::Status::Optimal || sgn(r.objective) <= 0) return std::nullopt;
    return Hyperplane{std::vector<Rational>(r.x.begin(), r.x.begin() + static_cast<std::ptrdiff_t>(d)), r.x[d]};
}

/// A failing split: bodies `group` cannot be strictly separated from `rest`.
struct SeparationWitness {
    std::vector<std::size_t> tuple;
    std::vector<std::size_t> group;
    std::vector<std::size_t> rest;
    std::optional<Hyperplane> hyperplane;
};

namespace detail {

inline std::vector<Point> gather(const std::vector<std::vector<Point>>& sets, const std::vector<std::size_t>& ids) {
    std::vector<Point> out;
    for (std::size_t i : ids) out.insert(out.end(), sets[i].begin(), sets[i].end());
    return out;
}

inline std::size_t common_dimension(const std::vector<std::vector<Point>>& sets) {
    std::size_t d = 0;
    for (const auto& s : sets) {
        if (s.empty()) throw InputError("sets must be nonempty");
        for (const Point& p : s) {
            if (d == 0) d = p.dimension();
            if (p.dimension() != d || d == 0) throw InputError("dimension mismatch");
        }
    }
    return d;
}

}  // namespace detail

/// Every (d+1)-tuple of sets, in lexicographic order, and every split of it
/// into the group holding the tuple's first member and the rest. Returns the
/// first split without a strict separator, or nullopt if the family is
/// separated.
inline std::optional<SeparationWitness> first_unseparated_split(const std::vector<std::vector<Point>>& sets) {
    const std::size_t d = detail::common_dimension(sets);
    if (sets.size() < d + 1) throw InputError("need at least d+1 sets");
    std::optional<SeparationWitness> failure;
    for_each_combination(sets.size(), d + 1, [&](const std::vector<std::size_t>& tuple) {
        for (std::size_t j = 1; j <= d && !failure; ++j) {
            for_each_combination(d, j - 1, [&](const std::vector<std::size_t>& extra) {
                std::vector<char> in_group(d + 1, 0);
                in_group[0] = 1;
                for (std::size_t e : extra) in_group[e + 1] = 1;
                SeparationWitness w;
                w.tuple = tuple;
                for (std::size_t i = 0; i <= d; ++i) (in_group[i] ? w.group : w.rest).push_back(tuple[i]);
                if (!strictly_separating_hyperplane(detail::gather(sets, w.group), detail::gather(sets, w.rest))) {
                    failure = std::move(w);
                    return false;
                }
                return true;
            });
        }
        return !failure;
    });
    return failure;
}

inline bool is_separated_family(const std::vector<std::vector<Point>>& sets) {
    return !first_unseparated_split(sets).has_value();
}

namespace detail {

inline Hyperplane line_through(const Point& p, const Point& q) {
    std::vector<Rational> normal{q[1] - p[1], p[0] - q[0]};
    Rational offset = normal[0] * p[0] + normal[1] * p[1];
    return {std::move(normal), std::move(offset)};
}

inline bool meets_closed_hull(const Hyperplane& h, const std::vector<Point>& s) {
    bool below = false, above = false;
    for (const Point& p : s) {
        const Sign side = side_of_hyperplane(h, p);
        below = below || side != Sign::Positive;
        above = above || side != Sign::Negative;
    }
    return below && above;
}

inline void require_planar(std::size_t d, const char* what) {
    if (d != 2) throw GateError(std::string(what) + ": unsupported dimension (only d = 2)");
}

}  // namespace detail

/// A line meeting the convex hull of every set, or nullopt. If one exists,
/// one exists through two points of the union, so only those are tried.
inline std::optional<Hyperplane> hyperplane_transversal_exists(const std::vector<std::vector<Point>>& sets) {
    const std::size_t d = detail::common_dimension(sets);
    detail::require_planar(d, "hyperplane_transversal_exists");
    if (sets.size() != d + 1) throw InputError("need exactly d+1 sets");
    std::vector<Point> all = detail::gather(sets, {0, 1, 2});
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    if (all.size() == 1) return Hyperplane{{Rational(0), Rational(1)}, all[0][1]};
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            Hyperplane h = detail::line_through(all[i], all[j]);
            if (std::all_of(sets.begin(), sets.end(),
                            [&](const std::vector<Point>& s) { return detail::meets_closed_hull(h, s); }))
                return h;
        }
    return std::nullopt;
}

/// Points of `s` strictly on each side of h: {negative, positive}.
inline std::pair<std::size_t, std::size_t> side_counts(const Hyperplane& h, const std::vector<Point>& s) {
    std::pair<std::size_t, std::size_t> c{0, 0};
    for (const Point& p : s) {
        const Sign side = side_of_hyperplane(h, p);
        if (side == Sign::Negative) ++c.first;
        if (side == Sign::Positive) ++c.second;
    }
    return c;
}

/// Each open side holds at most floor(|S|/2) points of every set.
inline bool bisects(const Hyperplane& h, const std::vector<std::vector<Point>>& sets) {
    for (const auto& s : sets) {
        const auto [neg, pos] = side_counts(h, s);
        if (neg > s.size() / 2 || pos > s.size() / 2) return false;
    }
    return true;
}

/// Planar ham-sandwich cut. Without an anchor it bisects one or two sets and
/// is the first valid line through two union points in index-pair order.
/// With an anchor it bisects one set and passes through the anchor.
inline Hyperplane ham_sandwich_cut(const std::vector<std::vector<Point>>& sets,
                                   const std::optional<Point>& anchor = std::nullopt) {
    if (sets.empty()) throw InputError("ham_sandwich_cut needs at least one set");
    const std::size_t d = detail::common_dimension(sets);
    detail::require_planar(d, "ham_sandwich_cut");
    if (anchor) {
        if (sets.size() != 1) throw InputError("an anchored cut bisects exactly one set");
        if (anchor->dimension() != d) throw InputError("anchor dimension mismatch");
        for (const Point& p : sets[0]) {
            if (p == *anchor) continue;
            Hyperplane h = detail::line_through(*anchor, p);
            if (bisects(h, sets)) return h;
        }
        if (std::all_of(sets[0].begin(), sets[0].end(), [&](const Point& p) { return p == *anchor; }))
            return Hyperplane{{Rational(0), Rational(1)}, (*anchor)[1]};
        throw InputError("no anchored bisector through the set's points; anchor not in general position");
    }
    if (sets.size() > d) throw InputError("at most d sets can be bisected at once");
    std::vector<Point> all;
    for (const auto& s : sets) all.insert(all.end(), s.begin(), s.end());
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            if (all[i] == all[j]) continue;
            Hyperplane h = detail::line_through(all[i], all[j]);
            if (bisects(h, sets)) return h;
        }
    if (all.size() == 1 || std::all_of(all.begin(), all.end(), [&](const Point& p) { return p == all[0]; }))
        return Hyperplane{{Rational(0), Rational(1)}, all[0][1]};
    throw InputError("no bisecting line through two input points; input not in general position");
}

// ---------------------------------------------------------------------------
// Trimming loop

struct TrimStep {
    std::vector<std::size_t> tuple;  ///< bodies: 0 is {O}, i >= 1 is S_i
    std::vector<std::size_t> group;
    Hyperplane cut;
    bool anchored = false;
    std::vector<std::vector<std::size_t>> discarded;  ///< input indices per set
};

struct TrimTrace {
    std::vector<TrimStep> steps;
    std::vector<std::size_t> final_sizes;
};

struct TrimResult {
    std::vector<std::vector<std::size_t>> kept;  ///< surviving input indices per set
    std::vector<std::vector<Point>> sets;
    TrimTrace trace;
};

/// Trimming failed; the partial trace is attached.
class TrimError : public StageError {
public:
    TrimError(const std::string& what, TrimTrace trace) : StageError("trim", what), trace_(std::move(trace)) {}
    const TrimTrace& trace() const noexcept { return trace_; }

private:
    TrimTrace trace_;
};

inline nlohmann::json hyperplane_to_json(const Hyperplane& h) {
    nlohmann::json normal = nlohmann::json::array();
    for (const Rational& x : h.normal) normal.push_back(to_string(x));
    return {{"normal", normal}, {"offset", to_string(h.offset)}};
}

inline Hyperplane hyperplane_from_json(const nlohmann::json& j) {
    Hyperplane h;
    for (const auto& x : j.at("normal")) h.normal.push_back(rational_from_json(x));
    h.offset = rational_from_json(j.at("offset"));
    return h;
}

inline nlohmann::json trim_trace_to_json(const TrimTrace& t) {
    nlohmann::json steps = nlohmann::json::array();
    for (const TrimStep& s : t.steps)
        steps.push_back({{"tuple", s.tuple},
                         {"group", s.group},
                         {"cut", hyperplane_to_json(s.cut)},
                         {"anchored", s.anchored},
                         {"discarded", s.discarded}});
    return {{"steps", steps}, {"final_sizes", t.final_sizes}, {"step_count", t.steps.size()}};
}

inline TrimTrace trim_trace_from_json(const nlohmann::json& j) {
    TrimTrace t;
    for (const auto& s : j.at("steps"))
        t.steps.push_back({s.at("tuple").get<std::vector<std::size_t>>(), s.at("group").get<std::vector<std::size_t>>(),
                           hyperplane_from_json(s.at("cut")), s.at("anchored").get<bool>(),
                           s.at("discarded").get<std::vector<std::vector<std::size_t>>>()});
    t.final_sizes = j.at("final_sizes").get<std::vector<std::size_t>>();
    return t;
}

namespace detail {

struct PlannedCut {
    Hyperplane cut;
    bool anchored = false;
    std::vector<std::vector<std::size_t>> discard;  // positions within the current sets
    std::size_t total = 0;
};

// The part containing `unbisected` drops the side where that set has fewer
// points; the other part drops the opposite side. Points on the cut stay.
inline PlannedCut plan_cut(const std::vector<std::vector<Point>>& bodies, const SeparationWitness& w,
                           Hyperplane h, std::size_t unbisected, bool anchored) {
    const auto [neg, pos] = side_counts(h, bodies[unbisected]);
    if (neg > pos) {
        for (Rational& x : h.normal) x = -x;
        h.offset = -h.offset;
    }
    const bool u_in_group = std::find(w.group.begin(), w.group.end(), unbisected) != w.group.end();
    PlannedCut plan{h, anchored, std::vector<std::vector<std::size_t>>(bodies.size() - 1), 0};
    for (std::size_t b : w.tuple) {
        if (b == 0) continue;
        const bool in_group = std::find(w.group.begin(), w.group.end(), b) != w.group.end();
        const Sign drop = in_group == u_in_group ? Sign::Negative : Sign::Positive;
        for (std::size_t i = 0; i < bodies[b].size(); ++i)
            if (side_of_hyperplane(h, bodies[b][i]) == drop) {
                plan.discard[b - 1].push_back(i);
                ++plan.total;
            }
    }
    return plan;
}

}  // namespace detail

/// Repeatedly cuts the first non-separated split of {O}, S_1, ..., S_{d+1}
/// and discards at most half of each involved set, until the family is
/// separated. O is never discarded.
inline TrimResult trim_to_separated(const std::vector<std::vector<Point>>& sets, const Point& origin,
                                    std::size_t max_steps = 1000) {
    const std::size_t d = detail::common_dimension(sets);
    detail::require_planar(d, "trim_to_separated");
    if (sets.size() != d + 1) throw InputError("need exactly d+1 sets");
    if (origin.dimension() != d) throw InputError("origin dimension mismatch");

    TrimResult res;
    res.sets = sets;
    for (const auto& s : sets) {
        res.kept.emplace_back(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) res.kept.back()[i] = i;
    }
    auto sizes = [&] {
        std::vector<std::size_t> z;
        for (const auto& s : res.sets) z.push_back(s.size());
        return z;
    };

    while (true) {
        std::vector<std::vector<Point>> bodies{{origin}};
        bodies.insert(bodies.end(), res.sets.begin(), res.sets.end());
        const auto w = first_unseparated_split(bodies);
        if (!w) break;
        if (res.trace.steps.size() >= max_steps) {
            res.trace.final_sizes = sizes();
            throw TrimError("trim did not converge within the step limit", res.trace);
        }
        const auto& t = w->tuple;
        detail::PlannedCut plan;
        if (t[0] == 0) {
            // {O} is in the tuple: an anchored cut can bisect only one of the
            // other two sets; take the choice that discards fewer points.
            std::optional<detail::PlannedCut> best;
            for (std::size_t k = 0; k < 2; ++k) {
                const std::size_t bisected = t[k == 0 ? 1 : 2], other = t[k == 0 ? 2 : 1];
                auto cand = detail::plan_cut(bodies, *w, ham_sandwich_cut({bodies[bisected]}, origin), other, true);
                if (!best || cand.total < best->total) best = std::move(cand);
            }
            plan = std::move(*best);
        } else {
            plan = detail::plan_cut(bodies, *w, ham_sandwich_cut({bodies[t[0]], bodies[t[1]]}), t[2], false);
        }
        if (plan.total == 0) {
            res.trace.final_sizes = sizes();
            throw TrimError("trim stalled: the cut discards no point", res.trace);
        }
        TrimStep step{w->tuple, w->group, plan.cut, plan.anchored, {}};
        for (std::size_t i = 0; i < res.sets.size(); ++i) {
            std::vector<Point> pts;
            std::vector<std::size_t> idx, dropped;
            const auto& drop = plan.discard[i];
            for (std::size_t k = 0; k < res.sets[i].size(); ++k) {
                if (std::binary_search(drop.begin(), drop.end(), k)) {
                    dropped.push_back(res.kept[i][k]);
                } else {
                    pts.push_back(res.sets[i][k]);
                    idx.push_back(res.kept[i][k]);
                }
            }
            if (pts.empty()) {
                res.trace.final_sizes = sizes();
                throw TrimError("trim-exhausted: set " + std::to_string(i) + " would become empty", res.trace);
            }
            res.sets[i] = std::move(pts);
            res.kept[i] = std::move(idx);
            step.discarded.push_back(std::move(dropped));
        }
        res.trace.steps.push_back(std::move(step));
    }
    res.trace.final_sizes = sizes();
    return res;
}

/// Orientation signs of every (d+1)-subsequence, in lexicographic order.
inline std::vector<Sign> order_type(const std::vector<Point>& points) {
    if (points.empty()) return {};
    const std::size_t d = points[0].dimension();
    std::vector<Sign> out;
    std::vector<Point> simplex(d + 1);
    for_each_combination(points.size(), d + 1, [&](const std::vector<std::size_t>& idx) {
        for (std::size_t i = 0; i <= d; ++i) simplex[i] = points[idx[i]];
        const Sign s = orientation(simplex);
        if (s == Sign::Zero) throw InputError("order_type: degenerate tuple violates general position");
        out.push_back(s);
        return true;
    });
    return out;
}

/// Vertices of the convex hull in counter-clockwise order, starting from
/// the lexicographically smallest point; collinear boundary points dropped.
inline std::vector<Point> convex_hull_2d(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    std::vector<Point> hull(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && orient2d(hull[k - 2], hull[k - 1], pts[i]) != Sign::Positive) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && orient2d(hull[k - 2], hull[k - 1], pts[i]) != Sign::Positive) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

}  // namespace rainbow
