#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace cdbs {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

/// Axis-aligned box, possibly unbounded per component.
struct Box {
    Vec2 lo{kInf, kInf};
    Vec2 hi{-kInf, -kInf};

    bool valid() const { return lo.x <= hi.x && lo.y <= hi.y; }
    bool empty() const { return !valid(); }
    Vec2 size() const { return {hi.x - lo.x, hi.y - lo.y}; }
    bool contains(Vec2 p) const { return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y; }

    void expand(Vec2 p) {
        lo.x = p.x < lo.x ? p.x : lo.x;
        lo.y = p.y < lo.y ? p.y : lo.y;
        hi.x = p.x > hi.x ? p.x : hi.x;
        hi.y = p.y > hi.y ? p.y : hi.y;
    }
    void expand(const Box& other) {
        expand(other.lo);
        expand(other.hi);
    }
    Box intersect(const Box& other) const {
        Box r;
        r.lo = {lo.x > other.lo.x ? lo.x : other.lo.x, lo.y > other.lo.y ? lo.y : other.lo.y};
        r.hi = {hi.x < other.hi.x ? hi.x : other.hi.x, hi.y < other.hi.y ? hi.y : other.hi.y};
        return r;
    }
};

/// Box grown by h on every side, per component: the h-neighbourhood of a box.
Box neighbourhood(const Box& m, Vec2 h);

/// Composition of a quarter-turn rotation (quarters * pi/2 counterclockwise)
/// and a translation: x -> R x + t.
struct AxisIsometry {
    int quarters = 0;  // 0..3
    Vec2 translation{};

    Vec2 apply(Vec2 p) const;
    Vec2 apply_inverse(Vec2 p) const;
    Box apply(const Box& b) const;
};

/// Region under the graph of a positive piecewise-linear function phi on
/// [-a, a], with margin delta: points with x1 in [-a+delta, a-delta] and
/// delta < x2 < phi(x1).
struct GraphPiece {
    double a = 1.0;
    double delta = 0.0;
    std::vector<double> xs;    // strictly increasing, xs.front() = -a, xs.back() = a
    std::vector<double> phis;  // phi values at xs, all positive

    double phi(double x) const;
    double min_phi() const;
    double max_phi() const;
    /// Membership with margin m in place of the stored delta.
    bool contains_margin(Vec2 p, double m) const;
    bool contains(Vec2 p) const { return contains_margin(p, delta); }
    Box bounding_box() const;
};

GraphPiece rectangle_piece(double a, double height, double delta = 0.0);

/// Bounded graph domain: union of isometric images of graph pieces with a
/// shared overlap parameter h0.
class GraphDomain {
  public:
    struct PlacedPiece {
        AxisIsometry iso;
        GraphPiece piece;
    };

    GraphDomain(std::vector<PlacedPiece> pieces, double h0);

    double h0() const { return h0_; }
    const std::vector<PlacedPiece>& pieces() const { return pieces_; }

    bool contains(Vec2 p) const;
    /// Membership in the margin-m shrinking of piece r (m = 0 recovers the
    /// full piece; used by the overlap property checks).
    bool piece_contains_margin(int r, Vec2 p, double m) const;
    int piece_count() const { return static_cast<int>(pieces_.size()); }

    const Box& bounding_box() const { return bbox_; }

  private:
    std::vector<PlacedPiece> pieces_;
    double h0_;
    Box bbox_;
};

/// Plain structured text format: global h0, then one piece per line group
/// (rotation quarter-turns, translation, a, delta, samples).
void write_domain_spec(std::ostream& os, const GraphDomain& dom);
GraphDomain read_domain_spec(std::istream& is);
GraphDomain load_domain_spec(const std::string& path);

}  // namespace cdbs
