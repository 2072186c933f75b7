#include <doctest.h>

#include <cmath>
#include <vector>

#include "overlapfree/core_model.hpp"
#include "overlapfree/random.hpp"

using namespace overlapfree;

namespace {

Node circle(double x, double y, double r) {
    Node n;
    n.x = x;
    n.y = y;
    n.r_pack = r;
    n.r_draw = r;
    return n;
}

}  // namespace

TEST_CASE("center_of averages node centers") {
    std::vector<Node> two{circle(0, 0, 1), circle(2, 0, 1)};
    CHECK(center_of(two) == Vec2{1, 0});
    std::vector<Node> three{circle(0, 0, 1), circle(0, 0, 1), circle(3, 3, 1)};
    CHECK(center_of(three).x == doctest::Approx(1.0));
    CHECK(center_of(three).y == doctest::Approx(1.0));
    std::vector<Node> one{circle(5, 7, 1)};
    CHECK(center_of(one) == Vec2{5, 7});
}

TEST_CASE("center_of rejects an empty set") {
    std::vector<Node> none;
    CHECK_THROWS_WITH_AS(center_of(none), "empty node set", ParameterError);
}

TEST_CASE("center_of is translation equivariant") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Node> nodes;
        for (int i = 0; i < 50; ++i) nodes.push_back(circle(rng.uniform(-10, 10), rng.uniform(-10, 10), 1));
        const Vec2 v{rng.uniform(-100, 100), rng.uniform(-100, 100)};
        auto moved = nodes;
        for (auto& n : moved) {
            n.x += v.x;
            n.y += v.y;
        }
        const Vec2 a = center_of(nodes) + v;
        const Vec2 b = center_of(moved);
        CHECK(a.x == doctest::Approx(b.x).epsilon(1e-12));
        CHECK(a.y == doctest::Approx(b.y).epsilon(1e-12));
    }
}

TEST_CASE("mutual exclusion check on small fixtures") {
    std::vector<Node> tangent{circle(0, 0, 1), circle(2, 0, 1)};
    CHECK(check_mutual_exclusion(tangent, RadiusField::pack).empty());

    std::vector<Node> overlap{circle(0, 0, 1), circle(1.5, 0, 1)};
    const auto v = check_mutual_exclusion(overlap, RadiusField::pack);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == Violation{0, 1});

    std::vector<Node> triangle{circle(0, 0, 1), circle(2, 0, 1), circle(1, std::sqrt(3.0), 1)};
    CHECK(check_mutual_exclusion(triangle, RadiusField::pack).empty());
    CHECK(check_mutual_exclusion_brute(triangle, RadiusField::pack).empty());
}

TEST_CASE("mutual exclusion uses the requested radius field") {
    std::vector<Node> nodes{circle(0, 0, 1), circle(2, 0, 1)};
    nodes[0].r_draw = 1.5;
    CHECK(check_mutual_exclusion(nodes, RadiusField::pack).empty());
    CHECK(check_mutual_exclusion(nodes, RadiusField::draw).size() == 1);
}

TEST_CASE("grid check agrees with the brute-force check") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Node> nodes;
        const int n = 50 + static_cast<int>(rng.below(400));
        const double spread = rng.uniform(5, 60);
        for (int i = 0; i < n; ++i)
            nodes.push_back(circle(rng.uniform(0, spread), rng.uniform(0, spread), rng.uniform(0.05, 3.0)));
        CHECK(check_mutual_exclusion(nodes, RadiusField::pack) == check_mutual_exclusion_brute(nodes, RadiusField::pack));
    }
}

TEST_CASE("layout params validation") {
    LayoutParams p;
    CHECK_NOTHROW(p.validate());
    p.size = 0;
    CHECK_THROWS_AS(p.validate(), ParameterError);
    p = {};
    p.k = 0;
    CHECK_THROWS_AS(p.validate(), ParameterError);
    p = {};
    p.epsilon = 0.01;
    CHECK_THROWS_AS(p.validate(), ParameterError);
}

TEST_CASE("density model") {
    DensityModel m{5.0, 3, 12};
    CHECK(m.d_k() == doctest::Approx(0.25));
    CHECK(m.r_pack_at(1.0) == doctest::Approx(std::sqrt(25.0 / (12 * M_PI))));
    CHECK(m.r_pack_at(0.01) == doctest::Approx(std::sqrt(25.0 / (3 * M_PI))));
    DensityModel small{5.0, 3, 2};
    CHECK(small.d_k() == 1.0);
}

TEST_CASE("bounding box covers r_pack") {
    std::vector<Node> nodes{circle(0, 0, 1), circle(4, 2, 2)};
    const auto b = bounding_box(nodes);
    CHECK(b.min_x == -1);
    CHECK(b.min_y == -1);
    CHECK(b.max_x == 6);
    CHECK(b.max_y == 4);
}
