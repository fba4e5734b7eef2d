#pragma once

#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace cdbs {

/// Open bounded interval (lo, hi) on the real line.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
    bool valid() const { return hi > lo; }
};

/// Finite window of a conceptually bi-infinite non-decreasing knot sequence.
///
/// Knots are addressed by absolute integer index k; the window stores
/// tau_k for k in [offset, offset + size). The window is expected to extend
/// far enough beyond the region of interest that every B-spline and every
/// dual evaluation point touched by the caller has all of its knots stored.
///
/// Condensed windows (see condense) may contain coincident runs longer than
/// the order; B-splines with empty support evaluate to zero.
class KnotWindow {
  public:
    KnotWindow() = default;
    KnotWindow(std::vector<double> knots, int order, int offset);

    int order() const { return order_; }
    int offset() const { return offset_; }
    int size() const { return static_cast<int>(knots_.size()); }
    int first_index() const { return offset_; }
    int last_index() const { return offset_ + size() - 1; }

    bool stores(int k) const { return k >= offset_ && k <= last_index(); }

    double knot(int k) const;
    std::span<const double> knots() const { return knots_; }

    /// Largest spacing tau_{k+1} - tau_k over all stored intervals.
    double max_spacing() const;
    /// Largest spacing over stored intervals that intersect [lo, hi].
    double max_spacing(double lo, double hi) const;

    /// Index k of the cell [tau_k, tau_{k+1}) containing x (right-continuous).
    /// x must lie within the window's span.
    int locate(double x) const;

    /// True if tau_k < tau_{k+n} for every stored pair, i.e. no knot has
    /// multiplicity above the order.
    bool has_order_spacing() const;

    bool operator==(const KnotWindow&) const = default;

  private:
    std::vector<double> knots_;
    int order_ = 1;
    int offset_ = 0;
};

/// Uniform window with spacing h covering [lo, hi] with pad extra cells on
/// both sides; knot i sits at i*h, so index 0 corresponds to the origin.
KnotWindow uniform_window(double h, double lo, double hi, int order, int pad);

/// Uniform window with every interior knot shifted by jitter*h*u, u drawn
/// uniformly from (-1, 1) with the given seed. jitter < 0.5 keeps the
/// sequence strictly increasing.
KnotWindow jittered_window(double h, double lo, double hi, int order, int pad,
                           double jitter, unsigned long long seed);

/// Window from an explicit list of knots; offset chosen so index 0 is the
/// first entry.
KnotWindow explicit_window(std::vector<double> knots, int order);

/// Normalized B-spline b_i of the window's order via the Cox-de Boor
/// recursion, right-continuous at knots. Zero outside [tau_i, tau_{i+n}).
/// Throws "knot window underflow" if the needed knots are not stored.
double eval_bspline(const KnotWindow& T, int i, double x);

/// Non-uniform condensation of T to the interval omega: when |omega| is at
/// most the window's max spacing, every knot at or below omega.lo moves to
/// omega.lo and every knot at or above omega.hi moves to omega.hi; knots
/// strictly inside stay. Otherwise the window is returned unchanged.
KnotWindow condense(const KnotWindow& T, Interval omega);

/// Indices of B-splines whose support meets the open interval omega.
std::vector<int> active_indices(const KnotWindow& T, Interval omega);

/// Plain text serialization, one knot per line (test fixtures).
void write_knots(std::ostream& os, const KnotWindow& T);
KnotWindow read_knots(std::istream& is, int order, int offset);

}  // namespace cdbs
