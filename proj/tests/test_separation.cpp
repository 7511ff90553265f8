#include <gtest/gtest.h>

#include "support.hpp"

using namespace rainbow;
using namespace testing_support;

namespace {

bool separates(const Hyperplane& h, const std::vector<Point>& a, const std::vector<Point>& b) {
    for (const Point& p : a)
        if (side_of_hyperplane(h, p) != Sign::Negative) return false;
    for (const Point& p : b)
        if (side_of_hyperplane(h, p) != Sign::Positive) return false;
    return true;
}

// Sets of 1..max points placed around random centres so that hulls sometimes
// overlap and sometimes do not.
std::vector<std::vector<Point>> clustered_sets(std::mt19937_64& rng, std::size_t count, std::size_t max_size,
                                               std::int64_t spread) {
    std::vector<std::size_t> sizes;
    for (std::size_t i = 0; i < count; ++i) sizes.push_back(1 + uniform_below(rng, max_size));
    auto sets = random_planar_sets(rng, sizes, spread);
    for (auto& s : sets) {
        const Point shift = random_point(rng, 2, 3 * spread);
        for (Point& p : s) p = Point{p[0] + shift[0], p[1] + shift[1]};
    }
    return sets;
}

}  // namespace

TEST(StrictSeparation, Examples) {
    const auto h = strictly_separating_hyperplane({Point{0, 0}}, {Point{1, 0}});
    ASSERT_TRUE(h.has_value());
    EXPECT_TRUE(separates(*h, {Point{0, 0}}, {Point{1, 0}}));
    const auto above = strictly_separating_hyperplane({Point{0, 0}, Point{2, 0}}, {Point{1, Rational(1, 2)}});
    ASSERT_TRUE(above.has_value());
    EXPECT_TRUE(separates(*above, {Point{0, 0}, Point{2, 0}}, {Point{1, Rational(1, 2)}}));
    EXPECT_FALSE(strictly_separating_hyperplane({Point{0, 0}, Point{2, 0}}, {Point{1, 0}}).has_value());
    EXPECT_THROW(strictly_separating_hyperplane({}, {Point{1, 0}}), InputError);
}

TEST(StrictSeparation, AgreesWithHullOracle) {
    std::mt19937_64 rng(1);
    int separated = 0, overlapping = 0;
    for (int i = 0; i < 300; ++i) {
        const auto sets = clustered_sets(rng, 2, 8, 6);
        const auto h = strictly_separating_hyperplane(sets[0], sets[1]);
        EXPECT_EQ(!h.has_value(), hulls_meet_oracle(sets[0], sets[1])) << "case " << i;
        if (h) {
            EXPECT_TRUE(separates(*h, sets[0], sets[1]));
            ++separated;
        } else {
            ++overlapping;
        }
    }
    EXPECT_GT(separated, 30);
    EXPECT_GT(overlapping, 30);
}

TEST(StrictSeparation, TouchingHullsAreNotSeparated) {
    // segments sharing an endpoint, and a vertex on the other hull's edge
    EXPECT_FALSE(strictly_separating_hyperplane({Point{0, 0}, Point{1, 1}}, {Point{1, 1}, Point{2, 0}}).has_value());
    EXPECT_FALSE(
        strictly_separating_hyperplane({Point{0, 0}, Point{4, 0}, Point{2, 3}}, {Point{2, 0}, Point{2, -3}}).has_value());
}

TEST(SeparatedFamily, Examples) {
    EXPECT_TRUE(is_separated_family({{Point{0, 0}}, {Point{1, 0}}, {Point{0, 1}}}));
    // collinear singletons: the splits are {0}|{1,2}, {0,1}|{2}, {0,2}|{1};
    // only the last fails because (1,0) lies on the segment from (0,0) to (2,0)
    const auto w = first_unseparated_split({{Point{0, 0}}, {Point{1, 0}}, {Point{2, 0}}});
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(w->tuple, (std::vector<std::size_t>{0, 1, 2}));
    EXPECT_EQ(w->group, (std::vector<std::size_t>{0, 2}));
    EXPECT_EQ(w->rest, (std::vector<std::size_t>{1}));
    // interleaved segments
    const auto v = first_unseparated_split({{Point{0, 0}, Point{2, 2}}, {Point{0, 2}, Point{2, 0}}, {Point{50, 50}}});
    ASSERT_TRUE(v.has_value());
    EXPECT_EQ(v->group, (std::vector<std::size_t>{0}));
    EXPECT_EQ(v->rest, (std::vector<std::size_t>{1, 2}));
    EXPECT_THROW(first_unseparated_split({{Point{0, 0}}, {Point{1, 0}}}), InputError);
}

TEST(Transversal, Examples) {
    const auto axis = hyperplane_transversal_exists({{Point{0, 0}}, {Point{1, 0}}, {Point{2, 0}}});
    ASSERT_TRUE(axis.has_value());
    for (const Point& p : {Point{0, 0}, Point{1, 0}, Point{2, 0}}) EXPECT_EQ(side_of_hyperplane(*axis, p), Sign::Zero);
    EXPECT_FALSE(hyperplane_transversal_exists({{Point{0, 0}}, {Point{10, 0}}, {Point{5, 10}}}).has_value());
    EXPECT_TRUE(hyperplane_transversal_exists({{Point{0, -1}, Point{1, 1}},
                                               {Point{5, -2}, Point{6, 3}},
                                               {Point{10, 1}, Point{9, -1}}})
                    .has_value());
    EXPECT_THROW(hyperplane_transversal_exists({{Point{0, 0, 0}}, {Point{1, 0, 0}}, {Point{0, 1, 0}}, {Point{0, 0, 1}}}),
                 GateError);
}

TEST(Transversal, EquivalentToSeparation) {
    std::mt19937_64 rng(2);
    int separated = 0;
    for (int i = 0; i < 100; ++i) {
        const auto sets = clustered_sets(rng, 3, 6, 5);
        const bool sep = is_separated_family(sets);
        const auto line = hyperplane_transversal_exists(sets);
        EXPECT_EQ(sep, !line.has_value()) << "case " << i;
        if (line)
            for (const auto& s : sets) EXPECT_TRUE(std::any_of(s.begin(), s.end(), [&](const Point& p) {
                return side_of_hyperplane(*line, p) != Sign::Positive;
            }));
        separated += sep;
    }
    EXPECT_GT(separated, 10);
    EXPECT_LT(separated, 90);
}

TEST(HamSandwich, Examples) {
    const std::vector<std::vector<Point>> two{{Point{0, 0}, Point{0, 2}}, {Point{1, 0}, Point{1, 2}}};
    EXPECT_TRUE(bisects(ham_sandwich_cut(two), two));
    const std::vector<std::vector<Point>> row{{Point{0, 0}, Point{1, 0}, Point{2, 0}, Point{3, 0}}};
    const Point anchor{Rational(3, 2), 5};
    const Hyperplane h = ham_sandwich_cut(row, anchor);
    EXPECT_EQ(side_of_hyperplane(h, anchor), Sign::Zero);
    EXPECT_TRUE(bisects(h, row));
    const std::vector<std::vector<Point>> odd{{Point{0, 0}, Point{1, 0}, Point{2, 1}}};
    EXPECT_TRUE(bisects(ham_sandwich_cut(odd), odd));
    EXPECT_THROW(ham_sandwich_cut(two, anchor), InputError);
    EXPECT_THROW(ham_sandwich_cut({{Point{0, 0}}, {Point{1, 0}}, {Point{0, 1}}}), InputError);
}

TEST(HamSandwich, ContractOnRandomInstances) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        const std::size_t a = 1 + uniform_below(rng, 15), b = 1 + uniform_below(rng, 15);
        if (i % 2 == 0) {
            const auto sets = random_planar_sets(rng, {a, b});
            EXPECT_TRUE(bisects(ham_sandwich_cut(sets), sets));
        } else {
            auto sets = random_planar_sets(rng, {a, 1});
            const Point anchor = sets[1][0];
            sets.pop_back();
            const Hyperplane h = ham_sandwich_cut(sets, anchor);
            EXPECT_EQ(side_of_hyperplane(h, anchor), Sign::Zero);
            EXPECT_TRUE(bisects(h, sets));
        }
    }
}

TEST(Trim, AlreadySeparatedInputIsUnchanged) {
    const std::vector<std::vector<Point>> sets{{Point{0, 0}}, {Point{4, 0}}, {Point{0, 4}}};
    const auto r = trim_to_separated(sets, Point{1, 1});
    EXPECT_EQ(r.sets, sets);
    EXPECT_TRUE(r.trace.steps.empty());
    EXPECT_EQ(r.trace.final_sizes, (std::vector<std::size_t>{1, 1, 1}));
}

TEST(Trim, RandomOverlappingClassesAroundOrigin) {
    std::mt19937_64 rng(4);
    std::size_t finished = 0, max_steps = 0;
    for (int i = 0; i < 30; ++i) {
        auto sets = random_planar_sets(rng, {7, 7, 7, 1}, 30);
        const Point origin = sets[3][0];
        sets.pop_back();
        try {
            const auto r = trim_to_separated(sets, origin);
            ++finished;
            max_steps = std::max(max_steps, r.trace.steps.size());
            std::vector<std::vector<Point>> bodies{{origin}};
            bodies.insert(bodies.end(), r.sets.begin(), r.sets.end());
            EXPECT_TRUE(is_separated_family(bodies));
            std::vector<std::size_t> size{7, 7, 7};
            for (const auto& step : r.trace.steps) {
                std::size_t lost = 0;
                for (std::size_t c = 0; c < 3; ++c) {
                    EXPECT_LE(step.discarded[c].size(), size[c] / 2) << "case " << i;
                    size[c] -= step.discarded[c].size();
                    lost += step.discarded[c].size();
                    for (std::size_t k : step.discarded[c]) EXPECT_NE(sets[c][k], origin);
                }
                EXPECT_GT(lost, 0u);
            }
            EXPECT_EQ(size, r.trace.final_sizes);
            for (std::size_t c = 0; c < 3; ++c) EXPECT_GE(r.sets[c].size(), 1u);
        } catch (const TrimError& e) {
            EXPECT_FALSE(e.trace().final_sizes.empty());
        }
    }
    EXPECT_GE(finished, 20u);
    std::cout << "[trim] finished " << finished << "/30, max steps " << max_steps << "\n";
}

TEST(Trim, DiscardsOnlyDesignatedSides) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 10; ++i) {
        auto sets = random_planar_sets(rng, {6, 6, 6, 1}, 30);
        const Point origin = sets[3][0];
        sets.pop_back();
        try {
            const auto r = trim_to_separated(sets, origin);
            for (const auto& step : r.trace.steps)
                for (std::size_t c = 0; c < 3; ++c)
                    for (std::size_t k : step.discarded[c])
                        EXPECT_NE(side_of_hyperplane(step.cut, sets[c][k]), Sign::Zero);
            const auto json = trim_trace_to_json(r.trace);
            EXPECT_EQ(trim_trace_to_json(trim_trace_from_json(nlohmann::json::parse(json.dump()))), json);
        } catch (const TrimError&) {
        }
    }
}

TEST(OrderType, Examples) {
    EXPECT_EQ(order_type({Point{0, 0}, Point{1, 0}, Point{0, 1}}), (std::vector<Sign>{Sign::Positive}));
    // triples 012, 013, 023, 123 of the unit square
    EXPECT_EQ(order_type({Point{0, 0}, Point{1, 0}, Point{0, 1}, Point{1, 1}}),
              (std::vector<Sign>{Sign::Positive, Sign::Positive, Sign::Negative, Sign::Negative}));
    EXPECT_THROW(order_type({Point{0, 0}, Point{1, 1}, Point{2, 2}}), InputError);
    std::mt19937_64 rng(6);
    for (int i = 0; i < 20; ++i) {
        const auto pts = random_planar_sets(rng, {6})[0];
        const auto image = affine_image(pts, {{2, 1}, {1, 3}}, {7, -1});
        EXPECT_EQ(order_type(pts), order_type(image));
    }
}

TEST(OrderType, ConstantOnSeparatedFamilies) {
    std::mt19937_64 rng(7);
    int families = 0;
    for (int attempt = 0; families < 10 && attempt < 500; ++attempt) {
        const auto sets = clustered_sets(rng, 4, 4, 2);
        if (!is_separated_family(sets)) continue;
        ++families;
        std::vector<Point> reps;
        for (const auto& s : sets) reps.push_back(s[0]);
        const auto reference = order_type(reps);
        for (int k = 0; k < 10; ++k) {
            for (std::size_t c = 0; c < 4; ++c) reps[c] = sets[c][uniform_below(rng, sets[c].size())];
            EXPECT_EQ(order_type(reps), reference);
        }
    }
    EXPECT_EQ(families, 10);
}

TEST(ConvexHull, Square) {
    const auto h = convex_hull_2d({Point{1, 1}, Point{0, 0}, Point{1, 0}, Point{0, 1}, Point{Rational(1, 2), 0},
                                   Point{Rational(1, 2), Rational(1, 2)}});
    EXPECT_EQ(h, (std::vector<Point>{Point{0, 0}, Point{1, 0}, Point{1, 1}, Point{0, 1}}));
}
