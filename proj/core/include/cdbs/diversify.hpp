#pragma once

#include <functional>
#include <unordered_map>
#include <vector>

#include "cdbs/raster.hpp"
#include "cdbs/tensor_space.hpp"

namespace cdbs {

/// Diversified index j = (i, gamma): tensor index plus the id of one
/// connected component of supp B_i intersected with the domain.
struct DivIndex {
    Index2 i;
    int gamma = 0;
    bool operator==(const DivIndex&) const = default;
    auto operator<=>(const DivIndex&) const = default;
};

/// Diversified, per-direction condensed B-spline: the tensor B-spline B_i
/// restricted to one component of its support, with knots condensed to the
/// extent of the component's strip neighbourhoods.
struct CdBSpline {
    DivIndex j;
    int group = 0;  // index into DiversifiedSpace::groups()
    int comp = 0;   // component index within the group
    Interval omega1, omega2;
    KnotWindow tstar1, tstar2;
    bool changed1 = false, changed2 = false;  // condensation altered the window
    Box support;  // S_j^* as a box; the actual support is support x mask
    Vec2 hstar;   // max condensed spacing over omega, per direction
};

/// One connected component of a grid cell intersected with the domain, with
/// the list of splines whose support meets it.
struct CellComponent {
    Index2 k;
    int gamma = 0;
    ComponentMask mask;
    std::vector<int> relevant;  // spline ids, at most n1*n2 of them
    Box relevant_bound;         // union of their support boxes
};

/// Global rasterization of the domain at resolution eps, for component
/// queries that share one membership sampling of the domain.
class BitmapRegion {
  public:
    BitmapRegion() = default;
    BitmapRegion(const GraphDomain& dom, double eps);

    double eps() const { return eps_; }
    long ua() const { return ua_; }
    long ub() const { return ub_; }
    long va() const { return va_; }
    long vb() const { return vb_; }
    bool marked(Cell c) const {
        if (c.u < ua_ || c.u > ub_ || c.v < va_ || c.v > vb_) return false;
        size_t idx = static_cast<size_t>(c.v - va_) * static_cast<size_t>(ub_ - ua_ + 1) +
                     static_cast<size_t>(c.u - ua_);
        return (bits_[idx >> 6] >> (idx & 63)) & 1u;
    }
    long cell_count() const { return count_; }

    template <class F>
    void for_each_cell(F&& f) const {
        for (long v = va_; v <= vb_; ++v)
            for (long u = ua_; u <= ub_; ++u)
                if (marked({u, v})) f(Cell{u, v});
    }

    /// Components of (box intersected with the rasterized domain), same id
    /// ordering as cdbs::components.
    std::vector<ComponentMask> components(const Box& box) const;

  private:
    double eps_ = 1.0;
    long ua_ = 0, ub_ = -1, va_ = 0, vb_ = -1;
    long count_ = 0;
    std::vector<uint64_t> bits_;
};

/// The full diversified space over a tensor space and a graph domain:
/// enumeration of the indices j, condensation of every spline, and the
/// per-cell-component bookkeeping needed for local evaluation. Owns a copy
/// of the domain.
class DiversifiedSpace {
  public:
    struct Group {
        Index2 i;
        int first_spline = 0;
        std::vector<ComponentMask> comps;
    };

    DiversifiedSpace(TensorSpace space, GraphDomain dom, double eps);

    const TensorSpace& space() const { return space_; }
    const GraphDomain& domain() const { return dom_; }
    double eps() const { return eps_; }
    const BitmapRegion& raster() const { return raster_; }

    const std::vector<Group>& groups() const { return groups_; }
    const std::vector<CdBSpline>& splines() const { return splines_; }
    const std::vector<CellComponent>& cells() const { return cells_; }

    const ComponentMask& mask_of(const CdBSpline& s) const {
        return groups_[static_cast<size_t>(s.group)].comps[static_cast<size_t>(s.comp)];
    }

    /// B_j^*(x): product of the condensed univariate splines and the
    /// raster characteristic function of the component.
    double eval(int j, Vec2 x) const;

    /// Cell component containing x, or nullptr when x misses the raster.
    const CellComponent* locate_cell(Vec2 x) const;

    /// Sum over relevant splines at x with per-spline coefficients; used by
    /// spline evaluation and the quasi-interpolant.
    double eval_combination(const std::vector<double>& coeffs, Vec2 x) const;

    /// Deterministic sample of marked raster cell centers.
    std::vector<Vec2> sample_points(int count, unsigned long long seed) const;

  private:
    void build_splines();
    void build_cells();

    TensorSpace space_;
    GraphDomain dom_;
    double eps_;
    BitmapRegion raster_;
    std::vector<Group> groups_;
    std::vector<int> group_index_;  // (i1, i2) grid -> group id or -1
    std::vector<CdBSpline> splines_;
    std::vector<CellComponent> cells_;
    std::vector<int> cell_first_;  // (k1, k2) grid -> first cell component or -1
    std::vector<int> cell_count_;

    int group_at(Index2 i) const;
    int cells_at(Index2 k, int& count) const;
};

}  // namespace cdbs
