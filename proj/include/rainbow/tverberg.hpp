#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "rainbow/configuration.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/geometry.hpp"
#include "rainbow/lp.hpp"

namespace rainbow {

/// k vertex-disjoint rainbow simplices (one index per color each) and a
/// point strictly inside all of them.
struct TverbergCertificate {
    std::vector<std::vector<std::size_t>> simplices;
    Point witness;
};

/// Maximizes the smallest barycentric coordinate of p over all simplices at
/// once. A positive optimum means the open simplices share p.
inline std::optional<Point> common_interior_point(const std::vector<std::vector<Point>>& simplices) {
    if (simplices.empty()) throw InputError("common_interior_point needs at least one simplex");
    const std::size_t d = simplices[0].empty() ? 0 : simplices[0][0].dimension();
    std::vector<std::vector<Rational>> A;
    std::vector<Rational> b;
    for (const auto& simplex : simplices) {
        if (simplex.size() != d + 1) throw InputError("simplex needs d+1 vertices");
        if (orientation(simplex) == Sign::Zero) throw InputError("degenerate simplex");
        for (std::size_t i = 0; i <= d; ++i) {
            std::vector<Point> facet;
            for (std::size_t j = 0; j <= d; ++j)
                if (j != i) facet.push_back(simplex[j]);
            const Hyperplane h = orientation_form(facet);
            const Rational scale = evaluate(h, simplex[i]);
            // lambda_i(p) = (normal.p - offset) / scale >= t
            std::vector<Rational> row(d + 1);
            for (std::size_t x = 0; x < d; ++x) row[x] = -h.normal[x] / scale;
            row[d] = 1;
            A.push_back(std::move(row));
            b.push_back(-h.offset / scale);
        }
    }
    std::vector<Rational> cap(d + 1, Rational(0));
    cap[d] = 1;
    A.push_back(cap);
    b.push_back(1);
    std::vector<Rational> objective(d + 1, Rational(0));
    objective[d] = 1;
    const lp::Result r = lp::maximize(A, b, objective);
    if (r.status != lp::Status::Optimal || sgn(r.objective) <= 0) return std::nullopt;
    return Point(std::vector<Rational>(r.x.begin(), r.x.begin() + static_cast<std::ptrdiff_t>(d)));
}

namespace detail {

inline void validate_color_sets(const std::vector<std::vector<Point>>& sets) {
    if (sets.empty()) throw InputError("no point sets given");
    const std::size_t d = sets.size() - 1;
    if (d < 1) throw InputError("need at least two point sets");
    std::vector<Point> all;
    for (const auto& s : sets)
        for (const Point& p : s) {
            if (p.dimension() != d) throw InputError("d+1 sets must live in dimension d");
            all.push_back(p);
        }
    std::vector<Point> sorted = all;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InputError("point sets are not disjoint");
    const auto bad = d == 2 ? planar_collinear_triple(all) : general_position_check(all, d);
    if (bad) throw InputError("point sets are not in general position");
}

}  // namespace detail

/// Exhaustive search, in lexicographic order over sorted tuples of rainbow
/// simplices, for k vertex-disjoint ones sharing an interior point.
inline std::optional<TverbergCertificate> find_disjoint_rainbow_simplices(
    const std::vector<std::vector<Point>>& sets, std::size_t k) {
    detail::validate_color_sets(sets);
    const std::size_t d = sets.size() - 1;
    if (k < 1 || k > d + 1) throw InputError("k must lie in [1, d+1]");
    std::vector<std::size_t> sizes;
    for (const auto& s : sets) {
        if (s.size() < k) throw InputError("every set needs at least k points");
        sizes.push_back(s.size());
    }
    const std::size_t largest = *std::max_element(sizes.begin(), sizes.end());
    if (d == 2 && k == 3 && largest > 12)
        throw GateError("exhaustive search for 3 disjoint triangles is limited to sets of size <= 12");
    double simplices_count = 1;
    for (std::size_t s : sizes) simplices_count *= static_cast<double>(s);
    double tuples = 1;
    for (std::size_t i = 0; i < k; ++i) tuples *= (simplices_count - static_cast<double>(i)) / static_cast<double>(i + 1);
    if (tuples > 1e10) throw GateError("exhaustive search space too large for this instance");

    std::vector<std::vector<std::size_t>> rainbow;
    for_each_product(sizes, [&](const std::vector<std::size_t>& idx) {
        rainbow.push_back(idx);
        return true;
    });
    auto vertices = [&](const std::vector<std::size_t>& t) {
        std::vector<Point> v;
        for (std::size_t c = 0; c <= d; ++c) v.push_back(sets[c][t[c]]);
        return v;
    };

    // Pairwise prefilter. In the plane two triangles have overlapping
    // interiors iff no edge line weakly separates them.
    std::vector<std::size_t> offset(d + 2, 0);
    for (std::size_t c = 0; c <= d; ++c) offset[c + 1] = offset[c] + sizes[c];
    std::vector<Point> all;
    for (const auto& s : sets) all.insert(all.end(), s.begin(), s.end());
    const std::size_t total = all.size();
    std::vector<std::int8_t> orient;
    if (d == 2) {
        orient.assign(total * total * total, 0);
        for (std::size_t i = 0; i < total; ++i)
            for (std::size_t j = 0; j < total; ++j)
                for (std::size_t l = j + 1; l < total; ++l) {
                    if (i == j || i == l) continue;
                    const auto s = static_cast<std::int8_t>(sgn(orient2d_value(all[i], all[j], all[l])));
                    orient[(i * total + j) * total + l] = s;
                    orient[(i * total + l) * total + j] = static_cast<std::int8_t>(-s);
                }
    }
    auto overlaps = [&](const std::vector<std::size_t>& s, const std::vector<std::size_t>& t) {
        if (d != 2) return common_interior_point({vertices(s), vertices(t)}).has_value();
        std::size_t g1[3], g2[3];
        for (std::size_t c = 0; c < 3; ++c) {
            g1[c] = offset[c] + s[c];
            g2[c] = offset[c] + t[c];
        }
        auto separated_by_edge_of = [&](const std::size_t* p, const std::size_t* q) {
            for (std::size_t e = 0; e < 3; ++e) {
                const std::size_t u = p[e], v = p[(e + 1) % 3], w = p[(e + 2) % 3];
                const int inner = orient[(u * total + v) * total + w];
                bool all_out = true;
                for (std::size_t x = 0; x < 3 && all_out; ++x)
                    all_out = orient[(u * total + v) * total + q[x]] == -inner;
                if (all_out) return true;
            }
            return false;
        };
        return !separated_by_edge_of(g1, g2) && !separated_by_edge_of(g2, g1);
    };
    auto disjoint = [&](const std::vector<std::size_t>& s, const std::vector<std::size_t>& t) {
        for (std::size_t c = 0; c <= d; ++c)
            if (s[c] == t[c]) return false;
        return true;
    };

    std::vector<std::size_t> chosen;
    std::optional<TverbergCertificate> found;
    auto search = [&](auto&& self, std::size_t start) -> bool {
        if (chosen.size() == k) {
            std::vector<std::vector<Point>> simplices;
            for (std::size_t i : chosen) simplices.push_back(vertices(rainbow[i]));
            auto w = common_interior_point(simplices);
            if (!w) return false;
            TverbergCertificate cert;
            for (std::size_t i : chosen) cert.simplices.push_back(rainbow[i]);
            cert.witness = std::move(*w);
            found = std::move(cert);
            return true;
        }
        for (std::size_t next = start; next < rainbow.size(); ++next) {
            bool ok = true;
            for (std::size_t i : chosen)
                if (!disjoint(rainbow[i], rainbow[next]) || !overlaps(rainbow[i], rainbow[next])) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            chosen.push_back(next);
            if (chosen.size() >= 3 && chosen.size() < k) {
                std::vector<std::vector<Point>> partial;
                for (std::size_t i : chosen) partial.push_back(vertices(rainbow[i]));
                if (!common_interior_point(partial)) {
                    chosen.pop_back();
                    continue;
                }
            }
            if (self(self, next + 1)) return true;
            chosen.pop_back();
        }
        return false;
    };
    search(search, 0);
    return found;
}

/// Re-checks a certificate with orientation predicates only.
inline bool verify_tverberg_certificate(const std::vector<std::vector<Point>>& sets,
                                        const TverbergCertificate& cert) {
    const std::size_t d = sets.size() - 1;
    for (std::size_t a = 0; a < cert.simplices.size(); ++a) {
        const auto& t = cert.simplices[a];
        if (t.size() != d + 1) return false;
        std::vector<Point> v;
        for (std::size_t c = 0; c <= d; ++c) {
            if (t[c] >= sets[c].size()) return false;
            v.push_back(sets[c][t[c]]);
        }
        for (std::size_t b = a + 1; b < cert.simplices.size(); ++b)
            for (std::size_t c = 0; c <= d; ++c)
                if (cert.simplices[b][c] == t[c]) return false;
        if (orientation(v) == Sign::Zero || !point_in_simplex_interior(cert.witness, v)) return false;
    }
    return true;
}

}  // namespace rainbow
