#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "cdbs/fixtures.hpp"
#include "cdbs/geometry.hpp"

using namespace cdbs;

TEST_CASE("axis isometries") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int q = 0; q < 4; ++q) {
        AxisIsometry iso{q, {u(rng), u(rng)}};
        for (int rep = 0; rep < 20; ++rep) {
            Vec2 p{u(rng), u(rng)};
            Vec2 r = iso.apply_inverse(iso.apply(p));
            CHECK(std::abs(r.x - p.x) <= 1e-14);
            CHECK(std::abs(r.y - p.y) <= 1e-14);
        }
    }
    SUBCASE("quarter turn moves the unit vector") {
        AxisIsometry iso{1, {0, 0}};
        Vec2 r = iso.apply(Vec2{1, 0});
        CHECK(r.x == doctest::Approx(0.0));
        CHECK(r.y == doctest::Approx(1.0));
    }
}

TEST_CASE("box neighbourhood") {
    Box m{{0, 0}, {1, 2}};
    SUBCASE("plain inflation") {
        Box n = neighbourhood(m, {1, 1});
        CHECK(n.lo.x == -1);
        CHECK(n.hi.x == 2);
        CHECK(n.lo.y == -1);
        CHECK(n.hi.y == 3);
    }
    SUBCASE("zero inflation is the identity") {
        Box n = neighbourhood(m, {0, 0});
        CHECK(n.lo.x == m.lo.x);
        CHECK(n.hi.y == m.hi.y);
    }
    SUBCASE("infinite inflation gives a strip") {
        Box n = neighbourhood(m, {kInf, 0});
        CHECK(std::isinf(n.lo.x));
        CHECK(std::isinf(n.hi.x));
        CHECK(n.lo.y == 0);
        CHECK(n.hi.y == 2);
    }
    SUBCASE("membership form: one extra point extends the box by at most h") {
        // N(M, h) = {x : |{x} u M| <= |M| + h} for boxes.
        std::mt19937_64 rng(9);
        std::uniform_real_distribution<double> u(-3.0, 4.0);
        Vec2 h{0.7, 0.3};
        Box n = neighbourhood(m, h);
        for (int rep = 0; rep < 200; ++rep) {
            Vec2 x{u(rng), u(rng)};
            Box joined = m;
            joined.expand(x);
            bool within = joined.size().x <= m.size().x + h.x && joined.size().y <= m.size().y + h.y;
            CHECK(within == n.contains(x));
        }
    }
}

TEST_CASE("graph piece membership") {
    SUBCASE("rectangle piece, open in the graph direction") {
        GraphDomain dom({{AxisIsometry{0, {0, 0}}, rectangle_piece(2.0, 1.0)}}, 0.4);
        CHECK(dom.contains({0.0, 0.5}));
        CHECK_FALSE(dom.contains({0.0, 1.0}));  // boundary excluded
        CHECK_FALSE(dom.contains({0.0, 0.0}));
        CHECK(dom.contains({1.99, 0.01}));
        CHECK_FALSE(dom.contains({2.01, 0.5}));
    }
    SUBCASE("rotated piece") {
        GraphDomain dom({{AxisIsometry{1, {0, 0}}, rectangle_piece(2.0, 1.0)}}, 0.4);
        CHECK(dom.contains({-0.5, 0.0}));
        CHECK_FALSE(dom.contains({0.5, 0.0}));
        CHECK_FALSE(dom.contains({-0.5, 2.5}));
    }
    SUBCASE("piecewise linear graph evaluates by interpolation") {
        GraphPiece p;
        p.a = 1.0;
        p.xs = {-1.0, 0.0, 1.0};
        p.phis = {1.0, 2.0, 1.0};
        CHECK(p.phi(-0.5) == doctest::Approx(1.5));
        CHECK(p.phi(0.25) == doctest::Approx(1.75));
        CHECK(p.contains({0.0, 1.99}));
        CHECK_FALSE(p.contains({0.9, 1.2}));
    }
    SUBCASE("margin shrinks the piece from floor and ends") {
        GraphPiece p = rectangle_piece(2.0, 1.5);
        CHECK(p.contains_margin({-1.9, 0.2}, 0.0));
        CHECK_FALSE(p.contains_margin({-1.9, 0.2}, 0.3));
        CHECK_FALSE(p.contains_margin({0.0, 0.2}, 0.3));
        CHECK(p.contains_margin({0.0, 0.5}, 0.3));
    }
}

TEST_CASE("graph domain validation") {
    CHECK_THROWS_AS(GraphDomain({}, 0.4), std::invalid_argument);
    // min phi must exceed h0
    CHECK_THROWS_AS(GraphDomain({{AxisIsometry{}, rectangle_piece(2.0, 0.3)}}, 0.4),
                    std::invalid_argument);
    // a must exceed h0
    CHECK_THROWS_AS(GraphDomain({{AxisIsometry{}, rectangle_piece(0.3, 2.0)}}, 0.4),
                    std::invalid_argument);
}

TEST_CASE("domain spec round trip") {
    for (const auto& name : {"rectangle", "u_domain", "fig1like"}) {
        GraphDomain dom = fixture_domain(name);
        std::stringstream ss;
        write_domain_spec(ss, dom);
        GraphDomain back = read_domain_spec(ss);
        CHECK(back.h0() == dom.h0());
        REQUIRE(back.piece_count() == dom.piece_count());
        std::mt19937_64 rng(77);
        const Box& bb = dom.bounding_box();
        std::uniform_real_distribution<double> ux(bb.lo.x, bb.hi.x), uy(bb.lo.y, bb.hi.y);
        for (int rep = 0; rep < 500; ++rep) {
            Vec2 p{ux(rng), uy(rng)};
            CHECK(dom.contains(p) == back.contains(p));
        }
    }
}

TEST_CASE("fixture domains are well formed") {
    for (const auto& name : fixture_names()) {
        GraphDomain dom = fixture_domain(name);
        CHECK(dom.bounding_box().valid());
        CHECK(dom.h0() > 0);
    }
    CHECK_THROWS_AS(fixture_domain("nope"), std::invalid_argument);
}
