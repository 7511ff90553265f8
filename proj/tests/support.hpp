#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "rainbow/rainbow.hpp"

namespace testing_support {

using namespace rainbow;

inline Rational random_rational(std::mt19937_64& rng, std::int64_t range = 50, std::uint64_t den = 7) {
    const std::int64_t num = uniform_between(rng, -range * static_cast<std::int64_t>(den),
                                             range * static_cast<std::int64_t>(den));
    Rational q(Integer(static_cast<long>(num)), Integer(static_cast<unsigned long>(1 + uniform_below(rng, den))));
    q.canonicalize();
    return q;
}

inline Point random_point(std::mt19937_64& rng, std::size_t d, std::int64_t range = 50) {
    std::vector<Rational> c;
    for (std::size_t i = 0; i < d; ++i) c.push_back(random_rational(rng, range));
    return Point(std::move(c));
}

/// Point sets whose union is in general position and pairwise distinct.
inline std::vector<std::vector<Point>> random_planar_sets(std::mt19937_64& rng, const std::vector<std::size_t>& sizes,
                                                          std::int64_t range = 20) {
    std::vector<Point> all;
    std::vector<std::vector<Point>> sets;
    for (std::size_t s : sizes) {
        sets.emplace_back();
        while (sets.back().size() < s) {
            Point p = random_point(rng, 2, range);
            bool ok = std::find(all.begin(), all.end(), p) == all.end();
            for (std::size_t i = 0; ok && i < all.size(); ++i)
                for (std::size_t j = i + 1; ok && j < all.size(); ++j)
                    ok = orient2d(all[i], all[j], p) != Sign::Zero;
            if (!ok) continue;
            all.push_back(p);
            sets.back().push_back(p);
        }
    }
    return sets;
}

inline PartiteHypergraph random_hypergraph(std::mt19937_64& rng, const std::vector<std::size_t>& sizes,
                                           std::uint64_t num, std::uint64_t den) {
    std::vector<std::vector<std::size_t>> edges;
    for_each_product(sizes, [&](const std::vector<std::size_t>& e) {
        if (uniform_below(rng, den) < num) edges.push_back(e);
        return true;
    });
    return PartiteHypergraph(sizes, edges);
}

/// Solves A x = b by Gauss-Jordan elimination; A must be invertible.
inline std::vector<Rational> solve(std::vector<std::vector<Rational>> A, std::vector<Rational> b) {
    const std::size_t n = A.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (sgn(A[p][c]) == 0) ++p;
        std::swap(A[p], A[c]);
        std::swap(b[p], b[c]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || sgn(A[r][c]) == 0) continue;
            const Rational f = A[r][c] / A[c][c];
            for (std::size_t k = c; k < n; ++k) A[r][k] -= f * A[c][k];
            b[r] -= f * b[c];
        }
    }
    for (std::size_t i = 0; i < n; ++i) b[i] /= A[i][i];
    return b;
}

/// Barycentric coordinates of p with respect to a simplex.
inline std::vector<Rational> barycentric_oracle(const std::vector<Point>& simplex, const Point& p) {
    const std::size_t d = p.dimension();
    std::vector<std::vector<Rational>> A(d + 1, std::vector<Rational>(d + 1));
    std::vector<Rational> b(d + 1);
    for (std::size_t row = 0; row < d; ++row) {
        for (std::size_t col = 0; col <= d; ++col) A[row][col] = simplex[col][row];
        b[row] = p[row];
    }
    for (std::size_t col = 0; col <= d; ++col) A[d][col] = 1;
    b[d] = 1;
    return solve(A, b);
}

inline bool strictly_inside_oracle(const std::vector<Point>& simplex, const Point& p) {
    const auto l = barycentric_oracle(simplex, p);
    return std::all_of(l.begin(), l.end(), [](const Rational& x) { return sgn(x) > 0; });
}

// Closed planar predicates built from orientation signs only.
inline bool on_closed_segment(const Point& p, const Point& a, const Point& b) {
    if (orient2d(a, b, p) != Sign::Zero) return false;
    return std::min(a[0], b[0]) <= p[0] && p[0] <= std::max(a[0], b[0]) && std::min(a[1], b[1]) <= p[1] &&
           p[1] <= std::max(a[1], b[1]);
}

inline bool closed_segments_meet(const Point& a, const Point& b, const Point& c, const Point& d) {
    const int o1 = to_int(orient2d(a, b, c)), o2 = to_int(orient2d(a, b, d));
    const int o3 = to_int(orient2d(c, d, a)), o4 = to_int(orient2d(c, d, b));
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    return on_closed_segment(c, a, b) || on_closed_segment(d, a, b) || on_closed_segment(a, c, d) ||
           on_closed_segment(b, c, d);
}

inline bool in_closed_triangle(const Point& p, const Point& a, const Point& b, const Point& c) {
    const Sign s = orient2d(a, b, c);
    if (s == Sign::Zero) return on_closed_segment(p, a, b) || on_closed_segment(p, b, c) || on_closed_segment(p, a, c);
    for (auto [u, v] : {std::pair{&a, &b}, std::pair{&b, &c}, std::pair{&c, &a}})
        if (orient2d(*u, *v, p) == -s) return false;
    return true;
}

inline bool in_closed_hull(const Point& p, const std::vector<Point>& s) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == p) return true;
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            if (on_closed_segment(p, s[i], s[j])) return true;
            for (std::size_t k = j + 1; k < s.size(); ++k)
                if (in_closed_triangle(p, s[i], s[j], s[k])) return true;
        }
    }
    return false;
}

/// Planar convex hulls of a and b intersect or touch (Caratheodory brute force).
inline bool hulls_meet_oracle(const std::vector<Point>& a, const std::vector<Point>& b) {
    for (const Point& p : a)
        if (in_closed_hull(p, b)) return true;
    for (const Point& p : b)
        if (in_closed_hull(p, a)) return true;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            for (std::size_t k = 0; k < b.size(); ++k)
                for (std::size_t l = k + 1; l < b.size(); ++l)
                    if (closed_segments_meet(a[i], a[j], b[k], b[l])) return true;
    return false;
}

inline std::vector<Point> affine_image(const std::vector<Point>& pts, const std::vector<std::vector<Rational>>& M,
                                       const std::vector<Rational>& t) {
    std::vector<Point> out;
    for (const Point& p : pts) {
        std::vector<Rational> c(t);
        for (std::size_t i = 0; i < t.size(); ++i)
            for (std::size_t j = 0; j < t.size(); ++j) c[i] += M[i][j] * p[j];
        out.emplace_back(std::move(c));
    }
    return out;
}

inline ColoredConfiguration hexagon() {
    // affine-regular hexagon v_0..v_5, color i = {v_i, v_{i+3}}
    const std::vector<Point> v{{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}};
    return {2, {{v[0], v[3]}, {v[1], v[4]}, {v[2], v[5]}}};
}

inline ColoredConfiguration triangle() { return {2, {{Point{0, 0}}, {Point{4, 0}}, {Point{0, 4}}}}; }

}  // namespace testing_support
