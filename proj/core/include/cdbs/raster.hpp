#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cdbs/geometry.hpp"

namespace cdbs {

/// Integer cell coordinates on the global raster of resolution eps:
/// cell (u, v) covers [u*eps, (u+1)*eps) x [v*eps, (v+1)*eps).
struct Cell {
    long u = 0;
    long v = 0;
    bool operator==(const Cell&) const = default;
};

inline Cell cell_of(Vec2 p, double eps) {
    return {static_cast<long>(std::floor(p.x / eps)), static_cast<long>(std::floor(p.y / eps))};
}
inline Vec2 cell_center(Cell c, double eps) {
    return {(c.u + 0.5) * eps, (c.v + 0.5) * eps};
}

/// One 4-connected component of (query box intersected with the domain) on
/// the eps-raster. Cells are marked when their center lies inside both.
class ComponentMask {
  public:
    ComponentMask() = default;
    ComponentMask(int id, double eps, long u0, long v0, long width, long height);

    int id() const { return id_; }
    double eps() const { return eps_; }
    long u0() const { return u0_; }
    long v0() const { return v0_; }
    long width() const { return width_; }
    long height() const { return height_; }

    bool in_bitmap(Cell c) const {
        return c.u >= u0_ && c.u < u0_ + width_ && c.v >= v0_ && c.v < v0_ + height_;
    }
    bool marked(Cell c) const {
        if (!in_bitmap(c)) return false;
        size_t idx = static_cast<size_t>(c.v - v0_) * static_cast<size_t>(width_) +
                     static_cast<size_t>(c.u - u0_);
        return (bits_[idx >> 6] >> (idx & 63)) & 1u;
    }
    void mark(Cell c);

    /// True when the raster cell containing p is marked.
    bool covers(Vec2 p) const { return marked(cell_of(p, eps_)); }

    long cell_count() const { return count_; }
    Cell min_cell() const { return min_cell_; }

    /// Tight bound of the marked cells as geometric squares.
    const Box& bbox() const { return bbox_; }

    /// Finalize derived data after marking (bbox, count, min cell).
    void finalize();

    template <class F>
    void for_each_cell(F&& f) const {
        for (long v = v0_; v < v0_ + height_; ++v)
            for (long u = u0_; u < u0_ + width_; ++u)
                if (marked({u, v})) f(Cell{u, v});
    }

    bool intersects(const ComponentMask& other) const;

    /// Summed-area table for O(1) "is this sub-rectangle fully marked" tests.
    struct Sat {
        long u0, v0, width, height;
        std::vector<uint32_t> sums;  // (width+1) x (height+1)
        /// Number of marked cells with u in [ua, ub), v in [va, vb).
        long count(long ua, long va, long ub, long vb) const;
    };
    Sat build_sat() const;

  private:
    int id_ = 0;
    double eps_ = 1.0;
    long u0_ = 0, v0_ = 0, width_ = 0, height_ = 0;
    long count_ = 0;
    Cell min_cell_{};
    Box bbox_;
    std::vector<uint64_t> bits_;
};

/// Connected components of (box intersected with the domain) at resolution
/// eps. Unbounded boxes are clipped to the domain's bounding box inflated by
/// eps. Components are id-ordered by their lexicographically smallest marked
/// cell, so the result is deterministic for a fixed eps.
std::vector<ComponentMask> components(const GraphDomain& dom, const Box& box, double eps);

namespace detail {
/// 4-connected labeling of the cells in [ua, ub] x [va, vb] selected by the
/// predicate, id-ordered by lexicographically smallest cell.
std::vector<ComponentMask> label_components(long ua, long va, long ub, long vb, double eps,
                                            const std::function<bool(Cell)>& inside);
/// Cell index range whose centers lie in the box (empty when ua > ub).
void center_span(const Box& box, double eps, long& ua, long& va, long& ub, long& vb);
}  // namespace detail

/// The unique mask whose raster cell containing p is marked, if any.
const ComponentMask* component_of(const std::vector<ComponentMask>& masks, Vec2 p);

/// The component of (bounding box of m) intersected with the domain that
/// contains m (m must be a connected subset of the domain).
ComponentMask pruned_bbox(const GraphDomain& dom, const ComponentMask& m);

/// The component of the h-neighbourhood of m intersected with the domain
/// that contains m.
ComponentMask local_neighbourhood(const GraphDomain& dom, const ComponentMask& m, Vec2 h);

/// 8-bit grayscale image aligned with the raster; used for debug output.
struct PgmImage {
    long width = 0, height = 0;
    long u0 = 0, v0 = 0;  // raster cell of pixel (0, height-1): pgm rows run top-down
    std::vector<uint8_t> pixels;

    static PgmImage blank(long u0, long v0, long width, long height, uint8_t value);
    void paint(const ComponentMask& mask, uint8_t value);
    void paint_box(const Box& box, double eps, uint8_t value);
    void write(const std::string& path) const;
};

}  // namespace cdbs
