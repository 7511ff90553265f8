#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rainbow/combinatorics.hpp"
#include "rainbow/configuration.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/geometry.hpp"

namespace rainbow {

// ---------------------------------------------------------------------------
// Constants

struct ConstantsBundle {
    std::size_t d = 0;
    Rational alpha;    ///< 1/(5d)^(d^2)
    Rational beta;     ///< alpha/(d+1)
    Rational epsilon;  ///< 1/2^(d 2^d)
    Integer N;         ///< n^(d+1), the number of rainbow simplices
};

inline ConstantsBundle theoretical_constants(std::size_t d, std::size_t n) {
    if (d < 1 || n < 1) throw InputError("theoretical_constants needs d >= 1 and n >= 1");
    if (d > 6) throw GateError("theoretical_constants: d > 6 makes 1/2^(d 2^d) unreasonably large");
    ConstantsBundle c;
    c.d = d;
    c.alpha = Rational(1, pow_int(Integer(static_cast<unsigned long>(5 * d)), d * d));
    c.beta = c.alpha / static_cast<unsigned long>(d + 1);
    c.epsilon = Rational(1, pow_int(Integer(2), d * (std::uint64_t{1} << d)));
    c.N = pow_int(Integer(static_cast<unsigned long>(n)), d + 1);
    return c;
}

/// The counting inequality C(n,4d)^(d+1) / C(n-d-1,3d-1)^(d+1) > alpha C(N,d+1).
/// It is asymptotic in n, so this is a diagnostic only.
struct CountingBound {
    std::optional<Rational> lhs;  ///< absent when the denominator vanishes
    Rational rhs;
    bool holds = false;
};

inline CountingBound counting_bound(std::size_t d, std::size_t n) {
    const ConstantsBundle c = theoretical_constants(d, n);
    CountingBound out;
    Integer nbig = c.N;
    Integer choose;
    mpz_bin_ui(choose.get_mpz_t(), nbig.get_mpz_t(), d + 1);
    out.rhs = c.alpha * Rational(choose);
    if (n >= d + 1) {
        const Integer den = pow_int(binomial(n - d - 1, 3 * d - 1), d + 1);
        if (den != 0) {
            out.lhs = Rational(pow_int(binomial(n, 4 * d), d + 1), den);
            out.lhs->canonicalize();
            out.holds = *out.lhs > out.rhs;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Rainbow depth

struct DepthCount {
    std::uint64_t count = 0;
    std::vector<std::vector<std::size_t>> tuples;  ///< per-color indices, lexicographic
};

inline std::vector<std::size_t> color_sizes(const ColoredConfiguration& cfg) {
    std::vector<std::size_t> sizes;
    for (const auto& c : cfg.colors) sizes.push_back(c.size());
    return sizes;
}

/// True iff p lies on a hyperplane spanned by d points of pairwise distinct
/// colors, i.e. on the affine hull of some facet of a rainbow simplex.
inline bool on_multicolored_hyperplane(const ColoredConfiguration& cfg, const Point& p) {
    const std::size_t d = cfg.dimension;
    if (p.dimension() != d) throw InputError("point dimension differs from configuration");
    std::vector<Point> tuple(d + 1);
    tuple[d] = p;
    bool hit = false;
    for_each_combination(cfg.colors.size(), d, [&](const std::vector<std::size_t>& cols) {
        std::vector<std::size_t> sizes;
        for (std::size_t c : cols) sizes.push_back(cfg.colors[c].size());
        const bool done = !for_each_product(sizes, [&](const std::vector<std::size_t>& idx) {
            for (std::size_t k = 0; k < d; ++k) tuple[k] = cfg.colors[cols[k]][idx[k]];
            if (orientation(tuple) == Sign::Zero) {
                hit = true;
                return false;
            }
            return true;
        });
        return !done;
    });
    return hit;
}

/// True iff p lies on any hyperplane spanned by d points of the configuration.
inline bool on_spanned_hyperplane(const ColoredConfiguration& cfg, const Point& p) {
    const FlatPoints flat = flatten(cfg);
    const std::size_t d = cfg.dimension;
    if (p.dimension() != d) throw InputError("point dimension differs from configuration");
    std::vector<Point> tuple(d + 1);
    tuple[d] = p;
    return !for_each_combination(flat.points.size(), d, [&](const std::vector<std::size_t>& idx) {
        for (std::size_t k = 0; k < d; ++k) tuple[k] = flat.points[idx[k]];
        return orientation(tuple) != Sign::Zero;
    });
}

/// Brute force over all rainbow tuples; lists every simplex strictly containing p.
inline DepthCount rainbow_depth_at(const ColoredConfiguration& cfg, const Point& p) {
    if (on_multicolored_hyperplane(cfg, p))
        throw InputError("ambiguous", "point " + to_string(p) + " is on spanned hyperplane");
    DepthCount out;
    std::vector<Point> simplex(cfg.dimension + 1);
    for_each_product(color_sizes(cfg), [&](const std::vector<std::size_t>& idx) {
        for (std::size_t c = 0; c < idx.size(); ++c) simplex[c] = cfg.colors[c][idx[c]];
        if (point_in_simplex_interior(p, simplex)) {
            ++out.count;
            out.tuples.push_back(idx);
        }
        return true;
    });
    return out;
}

namespace detail {

// Planar rainbow depth in O(N log N): a rainbow triangle misses p iff its
// vertices fit in an open half-plane through p, and then exactly one vertex
// sees the other two strictly counter-clockwise within a half-turn.
inline std::uint64_t planar_rainbow_depth(const ColoredConfiguration& cfg, const Point& p) {
    struct Item {
        Rational x, y;
        std::size_t color;
        int half;
    };
    std::vector<Item> items;
    for (std::size_t c = 0; c < 3; ++c)
        for (const Point& q : cfg.colors[c]) {
            Item it{q[0] - p[0], q[1] - p[1], c, 0};
            it.half = (sgn(it.y) > 0 || (sgn(it.y) == 0 && sgn(it.x) > 0)) ? 0 : 1;
            items.push_back(std::move(it));
        }
    auto cross = [](const Item& a, const Item& b) { return sgn(a.x * b.y - a.y * b.x); };
    std::sort(items.begin(), items.end(), [&](const Item& a, const Item& b) {
        if (a.half != b.half) return a.half < b.half;
        return cross(a, b) > 0;
    });
    const std::size_t N = items.size();
    std::vector<std::array<std::uint64_t, 3>> pref(2 * N + 1, {0, 0, 0});
    for (std::size_t t = 0; t < 2 * N; ++t) {
        pref[t + 1] = pref[t];
        ++pref[t + 1][items[t % N].color];
    }
    auto dot_positive = [](const Item& a, const Item& b) { return sgn(a.x * b.x + a.y * b.y) > 0; };
    std::uint64_t missing = 0;
    for (std::size_t s = 0; s < N; ++s) {
        const Item& a = items[s];
        std::size_t lo = s + 1;
        while (lo < s + N && cross(a, items[lo % N]) == 0 && dot_positive(a, items[lo % N])) ++lo;
        std::size_t l = lo, r = s + N;  // first t in [lo, s+N) with cross <= 0
        while (l < r) {
            const std::size_t mid = l + (r - l) / 2;
            if (cross(a, items[mid % N]) > 0)
                l = mid + 1;
            else
                r = mid;
        }
        std::uint64_t prod = 1;
        for (std::size_t c = 0; c < 3; ++c)
            if (c != a.color) prod *= pref[l][c] - pref[lo][c];
        missing += prod;
    }
    std::uint64_t total = 1;
    for (const auto& c : cfg.colors) total *= c.size();
    return total - missing;
}

}  // namespace detail

/// Rainbow depth count without the tuple list. The caller guarantees that p
/// avoids every multicolored spanned hyperplane.
inline std::uint64_t rainbow_depth_count(const ColoredConfiguration& cfg, const Point& p) {
    if (cfg.dimension == 2) return detail::planar_rainbow_depth(cfg, p);
    std::uint64_t count = 0;
    std::vector<Point> simplex(cfg.dimension + 1);
    for_each_product(color_sizes(cfg), [&](const std::vector<std::size_t>& idx) {
        for (std::size_t c = 0; c < idx.size(); ++c) simplex[c] = cfg.colors[c][idx[c]];
        if (point_in_simplex_interior(p, simplex)) ++count;
        return true;
    });
    return count;
}

// ---------------------------------------------------------------------------
// Deepest point

enum class DepthStrategy { ExactArrangement, CandidateSampling };

inline DepthStrategy parse_depth_strategy(const std::string& s) {
    if (s == "exact" || s == "exact-arrangement") return DepthStrategy::ExactArrangement;
    if (s == "sampling" || s == "candidate-sampling") return DepthStrategy::CandidateSampling;
    throw InputError("unknown depth strategy '" + s + "'");
}

inline std::string to_string(DepthStrategy s) {
    return s == DepthStrategy::ExactArrangement ? "exact-arrangement" : "candidate-sampling";
}

struct SamplingBudget {
    std::size_t max_centroids = 20000;
    std::size_t random_points = 1000;
    std::uint64_t seed = 0;
};

struct DepthResult {
    Point witness;
    std::uint64_t depth = 0;
    std::uint64_t candidates_examined = 0;
};

namespace detail {

class PlanarArrangement {
public:
    explicit PlanarArrangement(const ColoredConfiguration& cfg) : cfg_(cfg), flat_(flatten(cfg)) {
        N_ = flat_.points.size();
        orient_.assign(N_ * N_ * N_, 0);
        for_each_combination(N_, 3, [&](const std::vector<std::size_t>& t) {
            const auto s = static_cast<std::int8_t>(
                sgn(orient2d_value(flat_.points[t[0]], flat_.points[t[1]], flat_.points[t[2]])));
            const std::size_t i = t[0], j = t[1], k = t[2];
            set(i, j, k, s);
            set(j, k, i, s);
            set(k, i, j, s);
            set(j, i, k, -s);
            set(i, k, j, -s);
            set(k, j, i, -s);
            return true;
        });
        // third-color counts on each side of every multicolored line
        side_count_.assign(N_ * N_, {0, 0});
        for (std::size_t c = 0; c < N_; ++c)
            for (std::size_t e = 0; e < N_; ++e) {
                if (c == e || flat_.color[c] == flat_.color[e]) continue;
                const std::size_t third = 3 - flat_.color[c] - flat_.color[e];
                auto& cnt = side_count_[c * N_ + e];
                for (std::size_t x = 0; x < N_; ++x)
                    if (flat_.color[x] == third) ++cnt[orient(c, e, x) > 0 ? 0 : 1];
            }
    }

    DepthResult search() {
        std::int64_t best = -1;
        struct Candidate {
            std::size_t a, b;
            int side;
            Rational t0, t1;
        };
        std::vector<Candidate> winners;
        std::uint64_t examined = 0;

        for (std::size_t a = 0; a < N_; ++a)
            for (std::size_t b = a + 1; b < N_; ++b) {
                if (flat_.color[a] == flat_.color[b]) continue;
                struct Crossing {
                    Rational t;
                    std::int64_t delta;
                };
                std::vector<Crossing> crossings;
                for (std::size_t c = 0; c < N_; ++c) {
                    if (c == a || c == b) continue;
                    for (std::size_t e = c + 1; e < N_; ++e) {
                        if (e == a || e == b) continue;
                        const int sa = orient(c, e, a), sb = orient(c, e, b);
                        if (sa == sb) continue;
                        const Rational fa = orient2d_value(flat_.points[c], flat_.points[e], flat_.points[a]);
                        const Rational fb = orient2d_value(flat_.points[c], flat_.points[e], flat_.points[b]);
                        std::int64_t delta = 0;
                        if (flat_.color[c] != flat_.color[e] && orient(a, b, c) != orient(a, b, e)) {
                            const auto& cnt = side_count_[c * N_ + e];
                            const auto on = [&](int s) { return static_cast<std::int64_t>(cnt[s > 0 ? 0 : 1]); };
                            delta = on(sb) - on(sa);
                        }
                        crossings.push_back({fa / (fa - fb), delta});
                    }
                }
                std::sort(crossings.begin(), crossings.end(),
                          [](const Crossing& x, const Crossing& y) { return x.t < y.t; });
                std::vector<Rational> bounds{Rational(0)};
                std::vector<std::int64_t> step;  // depth change entering sub-edge k+1
                for (std::size_t k = 0; k < crossings.size();) {
                    std::int64_t sum = 0;
                    std::size_t l = k;
                    while (l < crossings.size() && crossings[l].t == crossings[k].t) sum += crossings[l++].delta;
                    bounds.push_back(crossings[k].t);
                    step.push_back(sum);
                    k = l;
                }
                bounds.push_back(Rational(1));

                for (int side : {1, -1}) {
                    const Point w = witness(a, b, bounds[0], bounds[1], side);
                    auto depth = static_cast<std::int64_t>(planar_rainbow_depth(cfg_, w));
                    for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
                        if (k > 0) depth += step[k - 1];
                        ++examined;
                        if (depth > best) {
                            best = depth;
                            winners.clear();
                        }
                        if (depth == best) winners.push_back({a, b, side, bounds[k], bounds[k + 1]});
                    }
                }
            }

        DepthResult result;
        bool have = false;
        for (const Candidate& c : winners) {
            Point w = witness(c.a, c.b, c.t0, c.t1, c.side);
            if (!have || w < result.witness) {
                result.witness = std::move(w);
                have = true;
            }
        }
        if (!have) throw Error("internal", "arrangement sweep found no cell");
        result.depth = static_cast<std::uint64_t>(best);
        result.candidates_examined = examined;
        if (planar_rainbow_depth(cfg_, result.witness) != result.depth ||
            on_spanned_hyperplane(cfg_, result.witness))
            throw Error("internal", "arrangement sweep witness failed re-validation");
        return result;
    }

private:
    int orient(std::size_t i, std::size_t j, std::size_t k) const { return orient_[(i * N_ + j) * N_ + k]; }
    void set(std::size_t i, std::size_t j, std::size_t k, int s) {
        orient_[(i * N_ + j) * N_ + k] = static_cast<std::int8_t>(s);
    }

    // A point strictly inside the cell adjacent to the open sub-edge (t0, t1)
    // of segment ab on the given side: push the sub-edge midpoint off the line
    // by half the distance to the first line it would meet.
    Point witness(std::size_t a, std::size_t b, const Rational& t0, const Rational& t1, int side) const {
        const Point& pa = flat_.points[a];
        const Point& pb = flat_.points[b];
        const Rational mid = (t0 + t1) / 2;
        const Rational mx = pa[0] + mid * (pb[0] - pa[0]);
        const Rational my = pa[1] + mid * (pb[1] - pa[1]);
        const Rational dx = -(pb[1] - pa[1]) * side;
        const Rational dy = (pb[0] - pa[0]) * side;
        std::optional<Rational> nearest;
        for (std::size_t c = 0; c < N_; ++c)
            for (std::size_t e = c + 1; e < N_; ++e) {
                if (c == a && e == b) continue;
                const Point& pc = flat_.points[c];
                const Point& pe = flat_.points[e];
                const Rational ex = pe[0] - pc[0], ey = pe[1] - pc[1];
                const Rational slope = ex * dy - ey * dx;
                if (sgn(slope) == 0) continue;
                const Rational at_mid = ex * (my - pc[1]) - ey * (mx - pc[0]);
                Rational t = -at_mid / slope;
                if (sgn(t) > 0 && (!nearest || t < *nearest)) nearest = std::move(t);
            }
        const Rational delta = nearest ? Rational(*nearest / 2) : Rational(1);
        return Point{Rational(mx + delta * dx), Rational(my + delta * dy)};
    }

    const ColoredConfiguration& cfg_;
    FlatPoints flat_;
    std::size_t N_ = 0;
    std::vector<std::int8_t> orient_;
    std::vector<std::array<std::uint32_t, 2>> side_count_;
};

inline DepthResult candidate_sampling(const ColoredConfiguration& cfg, const SamplingBudget& budget) {
    const std::size_t d = cfg.dimension;
    std::mt19937_64 rng(budget.seed);
    std::vector<Point> candidates;

    const std::vector<std::size_t> sizes = color_sizes(cfg);
    double total = 1;
    for (std::size_t s : sizes) total *= static_cast<double>(s);
    auto centroid = [&](const std::vector<std::size_t>& idx) {
        Point c(std::vector<Rational>(d, Rational(0)));
        for (std::size_t k = 0; k <= d; ++k)
            for (std::size_t x = 0; x < d; ++x) c[x] += cfg.colors[k][idx[k]][x];
        for (auto& x : c.coords) x /= static_cast<unsigned long>(d + 1);
        return c;
    };
    if (total <= static_cast<double>(budget.max_centroids)) {
        for_each_product(sizes, [&](const std::vector<std::size_t>& idx) {
            candidates.push_back(centroid(idx));
            return true;
        });
    } else {
        std::vector<std::size_t> idx(d + 1);
        for (std::size_t r = 0; r < budget.max_centroids; ++r) {
            for (std::size_t k = 0; k <= d; ++k) idx[k] = uniform_below(rng, sizes[k]);
            candidates.push_back(centroid(idx));
        }
    }

    const FlatPoints flat = flatten(cfg);
    std::vector<Rational> lo = flat.points[0].coords, hi = flat.points[0].coords;
    for (const Point& p : flat.points)
        for (std::size_t x = 0; x < d; ++x) {
            if (p[x] < lo[x]) lo[x] = p[x];
            if (p[x] > hi[x]) hi[x] = p[x];
        }
    constexpr std::uint64_t grid = 1u << 20;
    for (std::size_t r = 0; r < budget.random_points; ++r) {
        Point p;
        for (std::size_t x = 0; x < d; ++x)
            p.coords.push_back(lo[x] + (hi[x] - lo[x]) *
                                           Rational(static_cast<unsigned long>(uniform_below(rng, grid + 1)),
                                                    static_cast<unsigned long>(grid)));
        for (auto& x : p.coords) x.canonicalize();
        candidates.push_back(std::move(p));
    }

    DepthResult best;
    bool have = false;
    for (const Point& p : candidates) {
        if (on_spanned_hyperplane(cfg, p)) continue;
        ++best.candidates_examined;
        const std::uint64_t depth = rainbow_depth_count(cfg, p);
        if (!have || depth > best.depth || (depth == best.depth && p < best.witness)) {
            best.depth = depth;
            best.witness = p;
            have = true;
        }
    }
    if (!have) throw Error("internal", "every sampled candidate lies on a spanned hyperplane");
    return best;
}

}  // namespace detail

/// Finds a point contained in many rainbow simplices, avoiding every
/// hyperplane spanned by d input points.
///
/// ExactArrangement (d = 2) returns a global maximizer of rainbow depth:
/// the deepest region is bounded by rainbow edges, so walking every rainbow
/// segment and tracking the depth change across each crossing line visits a
/// deepest cell. Ties go to the lexicographically smallest witness.
/// CandidateSampling works in any dimension and makes no optimality claim.
inline DepthResult deepest_point(const ColoredConfiguration& cfg, DepthStrategy strategy,
                                 const SamplingBudget& budget = {}) {
    validate(cfg);
    if (strategy == DepthStrategy::ExactArrangement) {
        if (cfg.dimension != 2)
            throw GateError("unsupported dimension: exact-arrangement depth search needs d = 2");
        detail::PlanarArrangement arrangement(cfg);
        return arrangement.search();
    }
    return detail::candidate_sampling(cfg, budget);
}

}  // namespace rainbow
