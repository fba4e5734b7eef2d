#include "cdbs/fixtures.hpp"

#include <algorithm>
#include <stdexcept>

namespace cdbs {

namespace {

using Placed = GraphDomain::PlacedPiece;

GraphPiece sampled_piece(double a, std::vector<double> xs, std::vector<double> phis) {
    GraphPiece p;
    p.a = a;
    p.xs = std::move(xs);
    p.phis = std::move(phis);
    return p;
}

// Corner piece for a reentrant corner where a vertical limb of width
// [limb_lo, limb_hi] meets a horizontal slab of height 1 at y = 1: a
// plateau over the full limb height, a short bevel ramp, and a skirt of
// height 1 over the slab side. The plateau must span the whole limb so that
// small connected subsets touching the bevel sliver still fit this piece.
Placed corner_piece(double limb_lo, double limb_hi, double skirt_len, double plateau,
                    bool skirt_right) {
    double bevel = 0.02;
    Placed pp;
    if (skirt_right) {
        double lo = limb_lo, hi = limb_hi + skirt_len;
        double a = 0.5 * (hi - lo);
        double c = 0.5 * (lo + hi);
        pp.iso = {0, {c, 0.0}};
        pp.piece = sampled_piece(a, {-a, limb_hi - c, limb_hi + bevel - c, a},
                                 {plateau, plateau, 1.0, 1.0});
    } else {
        double lo = limb_lo - skirt_len, hi = limb_hi;
        double a = 0.5 * (hi - lo);
        double c = 0.5 * (lo + hi);
        pp.iso = {0, {c, 0.0}};
        pp.piece = sampled_piece(a, {-a, limb_lo - bevel - c, limb_lo - c, a},
                                 {1.0, 1.0, plateau, plateau});
    }
    return pp;
}

GraphDomain make_rectangle() {
    Placed pp;
    pp.iso = {0, {1.0, 0.0}};
    pp.piece = rectangle_piece(1.0, 1.0);
    return GraphDomain({pp}, 0.4);
}

GraphDomain make_lshape() {
    // (0,3)x(0,1) with a vertical limb (0,1)x(0,3).
    double h0 = 0.4;
    Placed base{{0, {1.5, 0.0}}, rectangle_piece(1.5, 1.0)};
    Placed limb{{1, {1.0, 1.5}}, rectangle_piece(1.5, 1.0)};  // floor on x = 1, opens left
    Placed corner = corner_piece(0.0, 1.0, 2 * h0 + 0.1, 3.0, true);
    return GraphDomain({base, limb, corner}, h0);
}

GraphDomain make_u_domain() {
    // Base (0,5.1)x(0,1) with fingers (1,1.85)x(0,2.6) and (3.25,4.1)x(0,2.6).
    double h0 = 0.4;
    double w = 0.85, height = 2.6;
    double l0 = 1.0, l1 = l0 + w;
    double r0 = 3.25, r1 = r0 + w;
    Placed base{{0, {2.55, 0.0}}, rectangle_piece(2.55, 1.0)};
    Placed lf{{1, {l1, 0.5 * height}}, rectangle_piece(0.5 * height, w)};
    Placed rf{{3, {r0, 0.5 * height}}, rectangle_piece(0.5 * height, w)};
    double plateau = height;
    double skirt = 2 * h0 + 0.05;
    Placed c1 = corner_piece(l0, l1, skirt, plateau, false);
    Placed c2 = corner_piece(l0, l1, skirt, plateau, true);
    Placed c3 = corner_piece(r0, r1, skirt, plateau, false);
    Placed c4 = corner_piece(r0, r1, skirt, plateau, true);
    return GraphDomain({base, lf, rf, c1, c2, c3, c4}, h0);
}

GraphDomain make_spike() {
    // Flat slab with a sharp triangular spike; used as the designed failure
    // fixture for coarse grids.
    Placed pp;
    pp.iso = {0, {1.2, 0.0}};
    pp.piece = sampled_piece(1.2, {-1.2, -0.1, 0.0, 0.1, 1.2}, {0.55, 0.55, 3.0, 0.55, 0.55});
    return GraphDomain({pp}, 0.5);
}

GraphDomain make_fig1like() {
    // Plateau boundary with two dips and a central tower: one B-spline near
    // the tower tip meets the domain in two components with distinct
    // condensed knots.
    Placed pp;
    pp.iso = {0, {2.0, 0.0}};
    pp.piece = sampled_piece(
        2.0, {-2.0, -0.22, -0.14, -0.06, 0.0, 0.06, 0.14, 0.22, 2.0},
        {1.5, 1.5, 0.55, 0.55, 1.6, 0.55, 0.55, 1.5, 1.5});
    return GraphDomain({pp}, 0.45);
}

GraphDomain make_thinslab() {
    Placed pp;
    pp.iso = {0, {5.0, 0.0}};
    pp.piece = rectangle_piece(5.0, 0.2);
    return GraphDomain({pp}, 0.15);
}

}  // namespace

GraphDomain fixture_domain(const std::string& name) {
    if (name == "rectangle") return make_rectangle();
    if (name == "lshape") return make_lshape();
    if (name == "u_domain") return make_u_domain();
    if (name == "spike") return make_spike();
    if (name == "fig1like") return make_fig1like();
    if (name == "thinslab") return make_thinslab();
    throw std::invalid_argument("unknown fixture domain '" + name + "'");
}

std::vector<std::string> fixture_names() {
    return {"rectangle", "lshape", "u_domain", "spike", "fig1like", "thinslab"};
}

bool is_fixture_name(const std::string& name) {
    auto names = fixture_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

}  // namespace cdbs
