#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "cdbs/fixtures.hpp"
#include "cdbs/raster.hpp"

using namespace cdbs;

namespace {

// Wide U: fingers (0,1)x(0,4) and (3,4)x(0,4) joined below y = 1.
GraphDomain wide_u() {
    std::vector<GraphDomain::PlacedPiece> pieces;
    pieces.push_back({AxisIsometry{0, {2.0, 0.0}}, rectangle_piece(2.0, 1.0)});
    pieces.push_back({AxisIsometry{1, {1.0, 2.0}}, rectangle_piece(2.0, 1.0)});
    pieces.push_back({AxisIsometry{3, {3.0, 2.0}}, rectangle_piece(2.0, 1.0)});
    return GraphDomain(std::move(pieces), 0.4);
}

GraphDomain plain_rect() {
    return GraphDomain({{AxisIsometry{0, {2.0, 0.0}}, rectangle_piece(2.0, 1.0)}}, 0.4);
}

}  // namespace

TEST_CASE("components of boxes against a domain") {
    double eps = 1.0 / 64;
    SUBCASE("convex case: a single component with the box as bound") {
        GraphDomain dom = plain_rect();
        auto comps = components(dom, Box{{1.0, 0.2}, {2.0, 0.8}}, eps);
        REQUIRE(comps.size() == 1);
        CHECK(std::abs(comps[0].bbox().lo.x - 1.0) <= eps);
        CHECK(std::abs(comps[0].bbox().hi.x - 2.0) <= eps);
        CHECK(std::abs(comps[0].bbox().lo.y - 0.2) <= eps);
        CHECK(std::abs(comps[0].bbox().hi.y - 0.8) <= eps);
    }
    SUBCASE("u-shaped domain splits a high box") {
        GraphDomain dom = wide_u();
        auto comps = components(dom, Box{{0.0, 2.0}, {4.0, 3.0}}, eps);
        REQUIRE(comps.size() == 2);
        CHECK(comps[0].bbox().hi.x <= 1.0 + eps);
        CHECK(comps[1].bbox().lo.x >= 3.0 - eps);
        CHECK(comps[0].bbox().lo.y >= 2.0 - eps);
        CHECK(comps[0].bbox().hi.y <= 3.0 + eps);
    }
    SUBCASE("low box is connected through the base") {
        GraphDomain dom = wide_u();
        auto comps = components(dom, Box{{0.0, 0.2}, {4.0, 0.8}}, eps);
        REQUIRE(comps.size() == 1);
    }
    SUBCASE("empty intersection gives an empty list") {
        GraphDomain dom = plain_rect();
        CHECK(components(dom, Box{{5.0, 5.0}, {6.0, 6.0}}, eps).empty());
    }
    SUBCASE("point lookup picks the right component") {
        GraphDomain dom = wide_u();
        auto comps = components(dom, Box{{0.0, 2.0}, {4.0, 3.0}}, eps);
        const ComponentMask* left = component_of(comps, {0.5, 2.5});
        const ComponentMask* right = component_of(comps, {3.5, 2.5});
        const ComponentMask* gap = component_of(comps, {2.0, 2.5});
        REQUIRE(left);
        REQUIRE(right);
        CHECK(left->id() != right->id());
        CHECK(gap == nullptr);
        CHECK(component_of(comps, {0.5, 0.5}) == nullptr);  // outside the box
    }
    SUBCASE("marked cell centers belong to the domain") {
        GraphDomain dom = wide_u();
        for (const auto& m : components(dom, Box{{-1.0, 0.0}, {5.0, 5.0}}, eps))
            m.for_each_cell([&](Cell c) { CHECK(dom.contains(cell_center(c, eps))); });
    }
}

TEST_CASE("pruned bounding box and local neighbourhood") {
    double eps = 1.0 / 64;
    GraphDomain dom = wide_u();
    SUBCASE("one finger segment prunes to its own finger") {
        auto comps = components(dom, Box{{0.2, 2.0}, {0.8, 3.0}}, eps);
        REQUIRE(comps.size() == 1);
        ComponentMask pruned = pruned_bbox(dom, comps[0]);
        CHECK(pruned.bbox().hi.x <= 1.0 + eps);

        // Inflated: wide enough to reach the other finger's x-range, but the
        // connected piece stays in the left finger.
        ComponentMask local = local_neighbourhood(dom, comps[0], {3.0, 0.0});
        CHECK(local.bbox().hi.x <= 1.0 + eps);
        CHECK(local.covers({0.5, 2.5}));

        // Reaching down into the base joins everything.
        ComponentMask wide = local_neighbourhood(dom, comps[0], {3.0, 1.5});
        CHECK(wide.bbox().hi.x >= 3.5 - eps);
    }
    SUBCASE("zero inflation reduces to the pruned bounding box") {
        auto comps = components(dom, Box{{0.2, 1.4}, {0.9, 2.2}}, eps);
        REQUIRE(comps.size() == 1);
        ComponentMask a = pruned_bbox(dom, comps[0]);
        ComponentMask b = local_neighbourhood(dom, comps[0], {0.0, 0.0});
        CHECK(a.cell_count() == b.cell_count());
        CHECK(a.bbox().lo.x == b.bbox().lo.x);
    }
    SUBCASE("a single cell prunes to the component containing it") {
        auto comps = components(dom, Box{{0.5, 2.5}, {0.5 + eps, 2.5 + eps}}, eps);
        REQUIRE(comps.size() == 1);
        ComponentMask pruned = pruned_bbox(dom, comps[0]);
        CHECK(pruned.covers({0.5, 2.5}));
        CHECK(pruned.cell_count() >= comps[0].cell_count());
    }
    SUBCASE("convex domain: pruned box is box intersect domain") {
        GraphDomain rect = plain_rect();
        auto comps = components(rect, Box{{0.3, 0.3}, {1.1, 0.7}}, eps);
        REQUIRE(comps.size() == 1);
        ComponentMask pruned = pruned_bbox(rect, comps[0]);
        CHECK(pruned.cell_count() == comps[0].cell_count());
    }
}

TEST_CASE("resolution stability on the acceptance fixtures") {
    for (const auto& name : {"rectangle", "lshape", "u_domain", "fig1like"}) {
        GraphDomain dom = fixture_domain(name);
        const Box& bb = dom.bounding_box();
        double eps = dom.h0() / 16;
        std::mt19937_64 rng(101);
        std::uniform_real_distribution<double> ux(bb.lo.x, bb.hi.x), uy(bb.lo.y, bb.hi.y);
        for (int rep = 0; rep < 20; ++rep) {
            Vec2 a{ux(rng), uy(rng)}, b{ux(rng), uy(rng)};
            Box q{{std::min(a.x, b.x), std::min(a.y, b.y)}, {std::max(a.x, b.x), std::max(a.y, b.y)}};
            size_t coarse = components(dom, q, eps).size();
            size_t fine = components(dom, q, eps / 2).size();
            CHECK(coarse == fine);
        }
    }
}

TEST_CASE("overlap guarantee: small connected subsets fit one piece") {
    for (const auto& name : {"rectangle", "lshape", "u_domain", "spike", "fig1like"}) {
        GraphDomain dom = fixture_domain(name);
        double h0 = dom.h0();
        double eps = h0 / 12;
        const Box& bb = dom.bounding_box();
        std::mt19937_64 rng(555);
        std::uniform_real_distribution<double> ux(bb.lo.x, bb.hi.x), uy(bb.lo.y, bb.hi.y);
        std::uniform_real_distribution<double> us(0.2 * h0, h0);
        int done = 0;
        while (done < 100) {
            Vec2 c{ux(rng), uy(rng)};
            if (!dom.contains(c)) continue;
            double sx = us(rng), sy = us(rng);
            auto comps = components(dom, Box{{c.x - sx, c.y - sy}, {c.x + sx, c.y + sy}}, eps);
            const ComponentMask* m = component_of(comps, c);
            if (!m) continue;
            ++done;
            bool fits = false;
            for (int r = 0; r < dom.piece_count() && !fits; ++r) {
                bool all = true;
                m->for_each_cell([&](Cell cc) {
                    if (all && !dom.piece_contains_margin(r, cell_center(cc, eps), 0.0)) all = false;
                });
                fits = all;
            }
            CHECK(fits);
        }
    }
}

TEST_CASE("components commute with axis isometries up to raster alignment") {
    GraphDomain dom = wide_u();
    Box query{{0.0, 2.0}, {4.0, 3.0}};
    double eps = 1.0 / 32;
    auto base = components(dom, query, eps);

    for (int q = 1; q < 4; ++q) {
        AxisIsometry sigma{q, {0.25, -0.375}};
        std::vector<GraphDomain::PlacedPiece> pieces;
        for (const auto& pp : dom.pieces()) {
            AxisIsometry comp{(sigma.quarters + pp.iso.quarters) & 3,
                              sigma.apply(pp.iso.translation)};
            pieces.push_back({comp, pp.piece});
        }
        GraphDomain rotated(std::move(pieces), dom.h0());
        auto moved = components(rotated, sigma.apply(query), eps);
        REQUIRE(moved.size() == base.size());
        long total_base = 0, total_moved = 0;
        for (const auto& m : base) total_base += m.cell_count();
        for (const auto& m : moved) total_moved += m.cell_count();
        // Same area up to a band of boundary cells.
        CHECK(std::abs(total_base - total_moved) <= 0.02 * total_base + 16);
    }
}

TEST_CASE("pgm export") {
    GraphDomain dom = wide_u();
    auto comps = components(dom, Box{{0.0, 0.0}, {4.0, 4.0}}, 1.0 / 16);
    REQUIRE(!comps.empty());
    PgmImage img = PgmImage::blank(-8, -8, 80, 80, 0);
    img.paint(comps[0], 200);
    std::filesystem::path path = std::filesystem::temp_directory_path() / "cdbs_mask.pgm";
    img.write(path.string());
    CHECK(std::filesystem::file_size(path) > 80 * 80);
    std::filesystem::remove(path);
}
