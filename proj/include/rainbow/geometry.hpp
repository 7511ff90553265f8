#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rainbow/combinatorics.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/rational.hpp"

namespace rainbow {

/// A point of R^d with exact rational coordinates.
struct Point {
    std::vector<Rational> coords;

    Point() = default;
    explicit Point(std::vector<Rational> c) : coords(std::move(c)) {}
    Point(std::initializer_list<Rational> c) : coords(c) {}

    std::size_t dimension() const { return coords.size(); }
    const Rational& operator[](std::size_t i) const { return coords[i]; }
    Rational& operator[](std::size_t i) { return coords[i]; }

    friend bool operator==(const Point& a, const Point& b) { return a.coords == b.coords; }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
    /// Lexicographic order on coordinates.
    friend bool operator<(const Point& a, const Point& b) {
        const std::size_t n = std::min(a.dimension(), b.dimension());
        for (std::size_t i = 0; i < n; ++i) {
            int c = cmp(a.coords[i], b.coords[i]);
            if (c != 0) return c < 0;
        }
        return a.dimension() < b.dimension();
    }
};

inline std::string to_string(const Point& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.dimension(); ++i) {
        if (i) s += ", ";
        s += to_string(p[i]);
    }
    return s + ")";
}

/// {x : normal . x = offset}; the positive side is normal . x > offset.
struct Hyperplane {
    std::vector<Rational> normal;
    Rational offset;

    std::size_t dimension() const { return normal.size(); }
    friend bool operator==(const Hyperplane&, const Hyperplane&) = default;
};

enum class Sign : int { Negative = -1, Zero = 0, Positive = 1 };

inline Sign to_sign(int s) { return s > 0 ? Sign::Positive : (s < 0 ? Sign::Negative : Sign::Zero); }
inline int to_int(Sign s) { return static_cast<int>(s); }
inline Sign operator-(Sign s) { return to_sign(-to_int(s)); }

/// Exact determinant by fraction-preserving Gaussian elimination.
inline Rational determinant(std::vector<std::vector<Rational>> m) {
    const std::size_t n = m.size();
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && sgn(m[pivot][col]) == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (sgn(m[r][col]) == 0) continue;
            Rational f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

/// Twice the signed area of (a, b, c).
inline Rational orient2d_value(const Point& a, const Point& b, const Point& c) {
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

inline Sign orient2d(const Point& a, const Point& b, const Point& c) {
    return to_sign(sgn(orient2d_value(a, b, c)));
}

/// det of the homogeneous matrix [1 v_0; 1 v_1; ...; 1 v_d]. Equal to
/// det[v_1 - v_0; ...; v_d - v_0].
inline Rational orientation_value(std::span<const Point> vertices) {
    const std::size_t d = vertices.empty() ? 0 : vertices[0].dimension();
    if (vertices.size() != d + 1)
        throw InputError("orientation needs d+1 vertices in dimension d");
    for (const Point& v : vertices)
        if (v.dimension() != d) throw InputError("dimension mismatch among vertices");
    if (d == 2) return orient2d_value(vertices[0], vertices[1], vertices[2]);
    if (d == 1) return vertices[1][0] - vertices[0][0];
    std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d));
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) m[r][c] = vertices[r + 1][c] - vertices[0][c];
    return determinant(std::move(m));
}

inline Sign orientation(std::span<const Point> vertices) {
    return to_sign(sgn(orientation_value(vertices)));
}

inline Sign orientation(std::initializer_list<Point> vertices) {
    return orientation(std::span<const Point>(vertices.begin(), vertices.size()));
}

/// The affine form p -> orientation_value(facet[0..d-1], p), packaged as a
/// hyperplane so that side_of_hyperplane agrees with the orientation sign.
inline Hyperplane orientation_form(std::span<const Point> facet) {
    const std::size_t d = facet.size();
    for (const Point& v : facet)
        if (v.dimension() != d) throw InputError("facet needs d points in dimension d");
    std::vector<Point> verts(facet.begin(), facet.end());
    verts.emplace_back(std::vector<Rational>(d, Rational(0)));
    const Rational at_origin = orientation_value(verts);
    Hyperplane h;
    h.normal.resize(d);
    for (std::size_t k = 0; k < d; ++k) {
        verts.back().coords.assign(d, Rational(0));
        verts.back()[k] = 1;
        h.normal[k] = orientation_value(verts) - at_origin;
    }
    h.offset = -at_origin;
    return h;
}

inline Rational evaluate(const Hyperplane& h, const Point& p) {
    if (h.dimension() != p.dimension()) throw InputError("hyperplane/point dimension mismatch");
    Rational s = -h.offset;
    for (std::size_t i = 0; i < p.dimension(); ++i) s += h.normal[i] * p[i];
    return s;
}

inline Sign side_of_hyperplane(const Hyperplane& h, const Point& p) {
    return to_sign(sgn(evaluate(h, p)));
}

/// Strict interior membership: p is on the same side of every facet as the
/// opposite vertex. Boundary points are not interior.
inline bool point_in_simplex_interior(const Point& p, std::span<const Point> vertices) {
    const Sign whole = orientation(vertices);
    if (whole == Sign::Zero) throw InputError("degenerate simplex");
    if (p.dimension() != vertices[0].dimension()) throw InputError("point dimension mismatch");
    std::vector<Point> probe(vertices.begin(), vertices.end());
    for (std::size_t i = 0; i < probe.size(); ++i) {
        probe[i] = p;
        const Sign s = orientation(probe);
        probe[i] = vertices[i];
        if (s != whole) return false;
    }
    return true;
}

inline bool point_in_simplex_interior(const Point& p, std::initializer_list<Point> vertices) {
    return point_in_simplex_interior(p, std::span<const Point>(vertices.begin(), vertices.size()));
}

/// Planar fast path of point_in_simplex_interior.
inline bool point_in_triangle_interior(const Point& p, const Point& a, const Point& b,
                                       const Point& c) {
    const int whole = sgn(orient2d_value(a, b, c));
    if (whole == 0) throw InputError("degenerate simplex");
    return sgn(orient2d_value(p, b, c)) == whole && sgn(orient2d_value(a, p, c)) == whole &&
           sgn(orient2d_value(a, b, p)) == whole;
}

/// Returns the lexicographically first (d+1)-tuple of indices whose points
/// are affinely dependent, or nullopt when the points are in general position.
inline std::optional<std::vector<std::size_t>> general_position_check(std::span<const Point> points,
                                                                      std::size_t d) {
    for (const Point& p : points)
        if (p.dimension() != d) throw InputError("point dimension differs from declared dimension");
    std::optional<std::vector<std::size_t>> violation;
    std::vector<Point> tuple(d + 1);
    for_each_combination(points.size(), d + 1, [&](const std::vector<std::size_t>& idx) {
        for (std::size_t i = 0; i <= d; ++i) tuple[i] = points[idx[i]];
        if (orientation(tuple) == Sign::Zero) {
            violation = idx;
            return false;
        }
        return true;
    });
    return violation;
}

}  // namespace rainbow
