#include <catch2/catch_amalgamated.hpp>

#include <pscat/halfplane.hpp>

#include <random>

using namespace pscat;

namespace {

std::mt19937 rng{7771234u};

Point random_point() {
    std::uniform_real_distribution<double> ux(-4.0, 4.0), uy(0.05, 6.0);
    return {ux(rng), uy(rng)};
}

GroupElement random_element(int word_len = 12) {
    const GroupElement T{1, 1, 0, 1}, Ti{1, -1, 0, 1}, S{0, -1, 1, 0};
    std::uniform_int_distribution<int> pick(0, 2);
    GroupElement g;
    for (int i = 0; i < word_len; ++i) {
        switch (pick(rng)) {
            case 0: g = compose(g, T); break;
            case 1: g = compose(g, Ti); break;
            default: g = compose(g, S); break;
        }
    }
    return g;
}

} // namespace

TEST_CASE("mobius_apply basics") {
    const Point z{0.3, 2.0};
    const Point id = mobius_apply(GroupElement{}, z);
    CHECK(id.x == z.x);
    CHECK(id.y == z.y);

    const GroupElement S{0, -1, 1, 0};
    const Point i{0.0, 1.0};
    const Point Si = mobius_apply(S, i);
    CHECK_THAT(Si.x, Catch::Matchers::WithinAbs(0.0, 1e-15));
    CHECK_THAT(Si.y, Catch::Matchers::WithinAbs(1.0, 1e-15));

    const GroupElement T{1, 1, 0, 1};
    const Point Tz = mobius_apply(T, z);
    CHECK_THAT(Tz.x, Catch::Matchers::WithinAbs(1.3, 1e-15));
    CHECK_THAT(Tz.y, Catch::Matchers::WithinAbs(2.0, 1e-15));

    CHECK(mobius_apply(T, z).y > 0.0);
}

TEST_CASE("hyp_distance values and properties") {
    const Point i{0.0, 1.0}, i2{0.0, 2.0}, onei{1.0, 1.0};
    CHECK(hyp_distance(i, i) == 0.0);
    CHECK_THAT(hyp_distance(i, i2), Catch::Matchers::WithinAbs(std::log(2.0), 1e-14));
    CHECK_THAT(hyp_distance(i, onei),
               Catch::Matchers::WithinAbs(std::acosh(1.5), 1e-14));

    for (int k = 0; k < 1000; ++k) {
        const Point z = random_point(), w = random_point();
        const GroupElement g = random_element();
        const double before = hyp_distance(z, w);
        const double after = hyp_distance(mobius_apply(g, z), mobius_apply(g, w));
        REQUIRE(std::abs(before - after) < 1e-12 * std::max(1.0, before));
    }

    for (int k = 0; k < 300; ++k) {
        const Point a = random_point(), b = random_point(), c = random_point();
        REQUIRE(hyp_distance(a, c) <=
                hyp_distance(a, b) + hyp_distance(b, c) + 1e-12);
    }
}

TEST_CASE("canonicalize sign rule") {
    const GroupElement e1 = canonicalize(1, 0, 0, 1);
    CHECK(e1 == GroupElement{1, 0, 0, 1});
    CHECK(canonicalize(-1, 0, 0, -1) == GroupElement{1, 0, 0, 1});
    CHECK(canonicalize(0, 1, -1, 0) == GroupElement{0, -1, 1, 0});
    CHECK_THROWS_AS(canonicalize(1, 1, 1, 1), domain_error);
    for (int k = 0; k < 50; ++k) {
        const GroupElement g = random_element();
        CHECK(canonicalize(-g.a, -g.b, -g.c, -g.d) == g);
    }
}

TEST_CASE("reduce_fund_domain") {
    const auto r1 = reduce_fund_domain(Point{0.0, 1.0});
    CHECK(r1.element.is_identity());
    CHECK(r1.point.x == 0.0);
    CHECK(r1.point.y == 1.0);

    const auto r2 = reduce_fund_domain(Point{5.0, 1.0});
    CHECK(r2.element == GroupElement{1, -5, 0, 1});
    CHECK_THAT(r2.point.x, Catch::Matchers::WithinAbs(0.0, 1e-15));

    const auto r3 = reduce_fund_domain(Point{0.5, 0.1});
    CHECK(std::abs(r3.point.x) <= 0.5 + 1e-15);
    CHECK(r3.point.x * r3.point.x + r3.point.y * r3.point.y >= 1.0 - 1e-14);

    for (int k = 0; k < 400; ++k) {
        const Point z = random_point();
        const auto r = reduce_fund_domain(z);
        REQUIRE(std::abs(r.point.x) <= 0.5);
        REQUIRE(r.point.x * r.point.x + r.point.y * r.point.y >= 1.0 - 1e-13);
        // g z = z*
        const Point gz = mobius_apply(r.element, z);
        REQUIRE(std::abs(gz.x - r.point.x) < 1e-10);
        REQUIRE(std::abs(gz.y - r.point.y) < 1e-10 * r.point.y);
        // idempotence
        const auto again = reduce_fund_domain(r.point);
        REQUIRE(again.element.is_identity());
    }

    // boundary ties prefer Re <= 0
    CHECK(reduce_fund_domain(Point{0.5, 3.0}).point.x == -0.5);
}
