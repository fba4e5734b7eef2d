#pragma once

#include <array>

#include "cdbs/geometry.hpp"
#include "cdbs/knots.hpp"

namespace cdbs {

struct Index2 {
    int i1 = 0;
    int i2 = 0;
    bool operator==(const Index2&) const = default;
    auto operator<=>(const Index2&) const = default;
};

/// Tensor-product B-spline space over two knot windows, together with the
/// grid-cell bookkeeping (a cell k is [tau_{1,k1-1}, tau_{1,k1}] x
/// [tau_{2,k2-1}, tau_{2,k2}], addressed by its upper-right knot index).
class TensorSpace {
  public:
    /// domain_box is the region of interest; max spacings are taken over
    /// knot intervals meeting it. The windows must cover it inflated by
    /// max(n1, n2) max spacings per side.
    TensorSpace(KnotWindow t1, KnotWindow t2, Box domain_box);

    const KnotWindow& t(int dir) const { return dir == 0 ? t1_ : t2_; }
    int order(int dir) const { return dir == 0 ? t1_.order() : t2_.order(); }
    int max_order() const { return std::max(t1_.order(), t2_.order()); }
    Vec2 spacing() const { return h_; }
    const Box& domain_box() const { return box_; }

    /// True when max(h1, h2) <= h0 / (max order + 1).
    bool grid_hypothesis(double h0) const;

    Box support(Index2 i) const;
    Box cell(Index2 k) const;
    Vec2 greville_anchor(Index2 k) const;  // cell midpoint

    /// Cell index containing x (half-open cells, right-continuous).
    Index2 locate(Vec2 x) const;

    /// Index ranges of B-splines whose support (cells whose interior)
    /// meets the domain box.
    std::array<int, 2> active_range1() const { return act1_; }
    std::array<int, 2> active_range2() const { return act2_; }
    std::array<int, 2> cell_range1() const { return cell1_; }
    std::array<int, 2> cell_range2() const { return cell2_; }

  private:
    KnotWindow t1_, t2_;
    Box box_;
    Vec2 h_;
    std::array<int, 2> act1_{}, act2_{}, cell1_{}, cell2_{};
};

}  // namespace cdbs
