#include "cdbs/knots.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <stdexcept>

namespace cdbs {

KnotWindow::KnotWindow(std::vector<double> knots, int order, int offset)
    : knots_(std::move(knots)), order_(order), offset_(offset) {
    if (order_ < 1) throw std::invalid_argument("knot window: order must be >= 1");
    if (knots_.size() < static_cast<size_t>(order_ + 1))
        throw std::invalid_argument("knot window: need at least order+1 knots");
    for (size_t k = 1; k < knots_.size(); ++k)
        if (knots_[k] < knots_[k - 1])
            throw std::invalid_argument("knot window: knots must be non-decreasing");
}

double KnotWindow::knot(int k) const {
    if (!stores(k)) throw std::out_of_range("knot window underflow");
    return knots_[static_cast<size_t>(k - offset_)];
}

double KnotWindow::max_spacing() const {
    double h = 0.0;
    for (size_t k = 1; k < knots_.size(); ++k) h = std::max(h, knots_[k] - knots_[k - 1]);
    return h;
}

double KnotWindow::max_spacing(double lo, double hi) const {
    double h = 0.0;
    for (size_t k = 1; k < knots_.size(); ++k) {
        if (knots_[k] <= lo || knots_[k - 1] >= hi) continue;
        h = std::max(h, knots_[k] - knots_[k - 1]);
    }
    return h;
}

int KnotWindow::locate(double x) const {
    // Rightmost k with tau_k <= x, skipping zero-length cells.
    auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
    if (it == knots_.begin() || it == knots_.end())
        throw std::out_of_range("knot window underflow");
    return offset_ + static_cast<int>(it - knots_.begin()) - 1;
}

bool KnotWindow::has_order_spacing() const {
    for (size_t k = 0; k + order_ < knots_.size(); ++k)
        if (!(knots_[k] < knots_[k + order_])) return false;
    return true;
}

KnotWindow uniform_window(double h, double lo, double hi, int order, int pad) {
    if (h <= 0) throw std::invalid_argument("uniform window: h must be positive");
    int k0 = static_cast<int>(std::floor(lo / h)) - pad;
    int k1 = static_cast<int>(std::ceil(hi / h)) + pad;
    std::vector<double> knots;
    knots.reserve(static_cast<size_t>(k1 - k0 + 1));
    for (int k = k0; k <= k1; ++k) knots.push_back(k * h);
    return KnotWindow(std::move(knots), order, k0);
}

KnotWindow jittered_window(double h, double lo, double hi, int order, int pad,
                           double jitter, unsigned long long seed) {
    if (jitter < 0 || jitter >= 0.5)
        throw std::invalid_argument("jittered window: jitter must lie in [0, 0.5)");
    KnotWindow base = uniform_window(h, lo, hi, order, pad);
    std::vector<double> knots(base.knots().begin(), base.knots().end());
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& t : knots) t += jitter * h * u(rng);
    return KnotWindow(std::move(knots), order, base.offset());
}

KnotWindow explicit_window(std::vector<double> knots, int order) {
    return KnotWindow(std::move(knots), order, 0);
}

namespace {

// Cox-de Boor with the 0/0 := 0 convention, on raw knots tau[0..n].
double deboor(std::span<const double> tau, int n, double x) {
    if (x < tau[0] || x >= tau[static_cast<size_t>(n)]) return 0.0;
    // b[r] holds the order-(level) value of the spline starting at knot r.
    std::vector<double> b(static_cast<size_t>(n), 0.0);
    for (int r = 0; r < n; ++r)
        b[static_cast<size_t>(r)] = (x >= tau[static_cast<size_t>(r)] && x < tau[static_cast<size_t>(r) + 1]) ? 1.0 : 0.0;
    for (int level = 2; level <= n; ++level) {
        for (int r = 0; r + level <= n; ++r) {
            double left = 0.0, right = 0.0;
            double dl = tau[static_cast<size_t>(r + level - 1)] - tau[static_cast<size_t>(r)];
            double dr = tau[static_cast<size_t>(r + level)] - tau[static_cast<size_t>(r + 1)];
            if (dl > 0) left = (x - tau[static_cast<size_t>(r)]) / dl * b[static_cast<size_t>(r)];
            if (dr > 0) right = (tau[static_cast<size_t>(r + level)] - x) / dr * b[static_cast<size_t>(r) + 1];
            b[static_cast<size_t>(r)] = left + right;
        }
    }
    return b[0];
}

}  // namespace

double eval_bspline(const KnotWindow& T, int i, double x) {
    int n = T.order();
    if (!T.stores(i) || !T.stores(i + n)) throw std::out_of_range("knot window underflow");
    std::span<const double> all = T.knots();
    return deboor(all.subspan(static_cast<size_t>(i - T.offset()), static_cast<size_t>(n + 1)), n, x);
}

KnotWindow condense(const KnotWindow& T, Interval omega) {
    if (!omega.valid()) throw std::invalid_argument("condense: degenerate interval");
    double h = T.max_spacing();
    if (omega.length() > h) return T;
    std::vector<double> knots(T.knots().begin(), T.knots().end());
    for (auto& t : knots) {
        if (t <= omega.lo)
            t = omega.lo;
        else if (t >= omega.hi)
            t = omega.hi;
    }
    return KnotWindow(std::move(knots), T.order(), T.offset());
}

std::vector<int> active_indices(const KnotWindow& T, Interval omega) {
    if (!omega.valid()) throw std::invalid_argument("active_indices: degenerate interval");
    std::vector<int> idx;
    int n = T.order();
    for (int i = T.first_index(); i + n <= T.last_index(); ++i) {
        // supp b_i = [tau_i, tau_{i+n}] meets the open interval.
        if (T.knot(i) < omega.hi && T.knot(i + n) > omega.lo) idx.push_back(i);
    }
    return idx;
}

void write_knots(std::ostream& os, const KnotWindow& T) {
    os.precision(17);
    for (double t : T.knots()) os << t << "\n";
}

KnotWindow read_knots(std::istream& is, int order, int offset) {
    std::vector<double> knots;
    double t;
    while (is >> t) knots.push_back(t);
    return KnotWindow(std::move(knots), order, offset);
}

}  // namespace cdbs
