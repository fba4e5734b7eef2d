#include "cdbs/tensor_space.hpp"

#include <stdexcept>

namespace cdbs {

namespace {

// Splines whose support [tau_i, tau_{i+n}] has interior overlap with [lo, hi].
std::array<int, 2> active_span(const KnotWindow& t, double lo, double hi) {
    int first = t.first_index();
    int last = t.last_index() - t.order();
    int a = last + 1, b = first - 1;
    for (int i = first; i <= last; ++i) {
        if (t.knot(i) < hi && t.knot(i + t.order()) > lo) {
            a = std::min(a, i);
            b = std::max(b, i);
        }
    }
    if (a > b) throw std::invalid_argument("tensor space: window does not reach the domain box");
    return {a, b};
}

// Cells [tau_{k-1}, tau_k] with interior overlap with [lo, hi].
std::array<int, 2> cell_span(const KnotWindow& t, double lo, double hi) {
    int a = t.last_index() + 1, b = t.first_index() - 1;
    for (int k = t.first_index() + 1; k <= t.last_index(); ++k) {
        if (t.knot(k - 1) < hi && t.knot(k) > lo) {
            a = std::min(a, k);
            b = std::max(b, k);
        }
    }
    return {a, b};
}

}  // namespace

TensorSpace::TensorSpace(KnotWindow t1, KnotWindow t2, Box domain_box)
    : t1_(std::move(t1)), t2_(std::move(t2)), box_(domain_box) {
    if (!t1_.has_order_spacing() || !t2_.has_order_spacing())
        throw std::invalid_argument("tensor space: knot multiplicity exceeds the order");
    h_ = {t1_.max_spacing(box_.lo.x, box_.hi.x), t2_.max_spacing(box_.lo.y, box_.hi.y)};
    if (!(h_.x > 0) || !(h_.y > 0))
        throw std::invalid_argument("tensor space: degenerate grid over the domain box");
    act1_ = active_span(t1_, box_.lo.x, box_.hi.x);
    act2_ = active_span(t2_, box_.lo.y, box_.hi.y);
    cell1_ = cell_span(t1_, box_.lo.x, box_.hi.x);
    cell2_ = cell_span(t2_, box_.lo.y, box_.hi.y);

    // Every active spline must have all knots plus the dual-point padding.
    int n1 = t1_.order(), n2 = t2_.order();
    if (!t1_.stores(act1_[0] - 1) || !t1_.stores(act1_[1] + n1 + 1) ||
        !t2_.stores(act2_[0] - 1) || !t2_.stores(act2_[1] + n2 + 1))
        throw std::invalid_argument("tensor space: window too tight around the domain box");
}

bool TensorSpace::grid_hypothesis(double h0) const {
    double h = std::max(h_.x, h_.y);
    return h <= h0 / (max_order() + 1) + 1e-12;
}

Box TensorSpace::support(Index2 i) const {
    return Box{{t1_.knot(i.i1), t2_.knot(i.i2)},
               {t1_.knot(i.i1 + t1_.order()), t2_.knot(i.i2 + t2_.order())}};
}

Box TensorSpace::cell(Index2 k) const {
    return Box{{t1_.knot(k.i1 - 1), t2_.knot(k.i2 - 1)}, {t1_.knot(k.i1), t2_.knot(k.i2)}};
}

Vec2 TensorSpace::greville_anchor(Index2 k) const {
    Box c = cell(k);
    return {0.5 * (c.lo.x + c.hi.x), 0.5 * (c.lo.y + c.hi.y)};
}

Index2 TensorSpace::locate(Vec2 x) const {
    return {t1_.locate(x.x) + 1, t2_.locate(x.y) + 1};
}

}  // namespace cdbs
