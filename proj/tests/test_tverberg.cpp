#include <gtest/gtest.h>

#include "support.hpp"

using namespace rainbow;
using namespace testing_support;

TEST(CommonInteriorPoint, Examples) {
    const std::vector<Point> big{{0, 0}, {10, 0}, {0, 10}};
    const std::vector<Point> inner{{1, 1}, {3, 1}, {1, 3}};
    const auto w = common_interior_point({big, inner});
    ASSERT_TRUE(w.has_value());
    EXPECT_TRUE(point_in_simplex_interior(*w, inner));
    EXPECT_TRUE(point_in_simplex_interior(*w, big));

    EXPECT_FALSE(common_interior_point({big, {Point{20, 20}, Point{30, 20}, Point{20, 30}}}).has_value());
    // touching at the single point (10, 0)
    EXPECT_FALSE(common_interior_point({big, {Point{10, 0}, Point{20, 0}, Point{15, -5}}}).has_value());
    // sharing an edge
    EXPECT_FALSE(common_interior_point({big, {Point{0, 0}, Point{10, 0}, Point{5, -5}}}).has_value());
    EXPECT_THROW(common_interior_point({{Point{0, 0}, Point{1, 1}, Point{2, 2}}}), InputError);
}

TEST(Tverberg, SingleTriangle) {
    const auto cert = find_disjoint_rainbow_simplices({{Point{0, 0}}, {Point{4, 0}}, {Point{0, 4}}}, 1);
    ASSERT_TRUE(cert.has_value());
    EXPECT_EQ(cert->simplices, (std::vector<std::vector<std::size_t>>{{0, 0, 0}}));
    EXPECT_TRUE(point_in_triangle_interior(cert->witness, Point{0, 0}, Point{4, 0}, Point{0, 4}));
}

TEST(Tverberg, PreconditionsAndGates) {
    std::mt19937_64 rng(7);
    EXPECT_THROW(find_disjoint_rainbow_simplices(random_planar_sets(rng, {2, 2, 2}), 3), InputError);
    EXPECT_THROW(find_disjoint_rainbow_simplices(random_planar_sets(rng, {3, 3, 3}), 0), InputError);
    EXPECT_THROW(find_disjoint_rainbow_simplices(random_planar_sets(rng, {13, 13, 13}), 3), GateError);
    EXPECT_THROW(find_disjoint_rainbow_simplices({{Point{0, 0}}, {Point{1, 1}}, {Point{2, 2}}}, 1), InputError);
    EXPECT_THROW(find_disjoint_rainbow_simplices({{Point{0, 0}}, {Point{0, 0}}, {Point{2, 3}}}, 1), InputError);
}

TEST(Tverberg, CertificatesReverify) {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 10; ++i) {
        const auto sets = random_planar_sets(rng, {5, 5, 5});
        for (std::size_t k = 1; k <= 3; ++k) {
            const auto cert = find_disjoint_rainbow_simplices(sets, k);
            if (!cert) continue;
            EXPECT_EQ(cert->simplices.size(), k);
            EXPECT_TRUE(verify_tverberg_certificate(sets, *cert));
            for (const auto& t : cert->simplices) {
                std::vector<Point> v{sets[0][t[0]], sets[1][t[1]], sets[2][t[2]]};
                EXPECT_TRUE(strictly_inside_oracle(v, cert->witness));
            }
        }
    }
}

TEST(Tverberg, KOneAgreesWithDepth) {
    // in general position every rainbow triangle is nondegenerate, so k = 1
    // never fails and its witness has positive rainbow depth
    std::mt19937_64 rng(9);
    for (int i = 0; i < 10; ++i) {
        const auto sets = random_planar_sets(rng, {2, 2, 2});
        const auto cert = find_disjoint_rainbow_simplices(sets, 1);
        ASSERT_TRUE(cert.has_value());
        std::size_t depth = 0;
        for_each_product({2, 2, 2}, [&](const std::vector<std::size_t>& t) {
            depth += strictly_inside_oracle({sets[0][t[0]], sets[1][t[1]], sets[2][t[2]]}, cert->witness);
            return true;
        });
        EXPECT_GE(depth, 1u);
    }
}

TEST(Tverberg, ThreeSimplicesFromEightPointsPerColor) {
    std::mt19937_64 rng(10);
    for (int i = 0; i < 3; ++i) {
        const auto sets = random_planar_sets(rng, {8, 8, 8});
        const auto cert = find_disjoint_rainbow_simplices(sets, 3);
        ASSERT_TRUE(cert.has_value());
        EXPECT_TRUE(verify_tverberg_certificate(sets, *cert));
    }
}

TEST(Tverberg, VerifierRejectsBadCertificates) {
    std::mt19937_64 rng(11);
    const auto sets = random_planar_sets(rng, {8, 8, 8});
    auto cert = *find_disjoint_rainbow_simplices(sets, 3);
    auto shared = cert;
    shared.simplices[1][0] = shared.simplices[0][0];
    EXPECT_FALSE(verify_tverberg_certificate(sets, shared));
    auto moved = cert;
    moved.witness = Point{1000, 1000};
    EXPECT_FALSE(verify_tverberg_certificate(sets, moved));
}
