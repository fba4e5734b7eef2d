#include "cdbs/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cdbs {

Box neighbourhood(const Box& m, Vec2 h) {
    Box r = m;
    r.lo.x -= h.x;
    r.lo.y -= h.y;
    r.hi.x += h.x;
    r.hi.y += h.y;
    return r;
}

Vec2 AxisIsometry::apply(Vec2 p) const {
    Vec2 r;
    switch (quarters & 3) {
        case 0: r = p; break;
        case 1: r = {-p.y, p.x}; break;
        case 2: r = {-p.x, -p.y}; break;
        default: r = {p.y, -p.x}; break;
    }
    return {r.x + translation.x, r.y + translation.y};
}

Vec2 AxisIsometry::apply_inverse(Vec2 p) const {
    Vec2 q{p.x - translation.x, p.y - translation.y};
    switch (quarters & 3) {
        case 0: return q;
        case 1: return {q.y, -q.x};
        case 2: return {-q.x, -q.y};
        default: return {-q.y, q.x};
    }
}

Box AxisIsometry::apply(const Box& b) const {
    Box r;
    r.expand(apply(b.lo));
    r.expand(apply(b.hi));
    return r;
}

double GraphPiece::phi(double x) const {
    if (x <= xs.front()) return phis.front();
    if (x >= xs.back()) return phis.back();
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    size_t k = static_cast<size_t>(it - xs.begin());
    double t = (x - xs[k - 1]) / (xs[k] - xs[k - 1]);
    return phis[k - 1] + t * (phis[k] - phis[k - 1]);
}

double GraphPiece::min_phi() const { return *std::min_element(phis.begin(), phis.end()); }
double GraphPiece::max_phi() const { return *std::max_element(phis.begin(), phis.end()); }

bool GraphPiece::contains_margin(Vec2 p, double m) const {
    if (p.x < -a + m || p.x > a - m) return false;
    return p.y > m && p.y < phi(p.x);
}

Box GraphPiece::bounding_box() const {
    return Box{{-a, 0.0}, {a, max_phi()}};
}

GraphPiece rectangle_piece(double a, double height, double delta) {
    GraphPiece p;
    p.a = a;
    p.delta = delta;
    p.xs = {-a, a};
    p.phis = {height, height};
    return p;
}

GraphDomain::GraphDomain(std::vector<PlacedPiece> pieces, double h0)
    : pieces_(std::move(pieces)), h0_(h0) {
    if (pieces_.empty()) throw std::invalid_argument("graph domain: no pieces");
    if (h0_ <= 0) throw std::invalid_argument("graph domain: h0 must be positive");
    for (const auto& pp : pieces_) {
        const GraphPiece& g = pp.piece;
        if (g.xs.size() != g.phis.size() || g.xs.size() < 2)
            throw std::invalid_argument("graph piece: need matching sample lists");
        if (g.xs.front() != -g.a || g.xs.back() != g.a)
            throw std::invalid_argument("graph piece: samples must cover [-a, a]");
        for (size_t k = 1; k < g.xs.size(); ++k)
            if (!(g.xs[k] > g.xs[k - 1]))
                throw std::invalid_argument("graph piece: abscissae must increase");
        if (!(g.a > h0_)) throw std::invalid_argument("graph piece: a must exceed h0");
        if (!(g.min_phi() > h0_)) throw std::invalid_argument("graph piece: min phi must exceed h0");
        if (g.delta < 0 || g.delta > h0_)
            throw std::invalid_argument("graph piece: delta must lie in [0, h0]");
        bbox_.expand(pp.iso.apply(g.bounding_box()));
    }
}

bool GraphDomain::contains(Vec2 p) const {
    for (const auto& pp : pieces_)
        if (pp.piece.contains(pp.iso.apply_inverse(p))) return true;
    return false;
}

bool GraphDomain::piece_contains_margin(int r, Vec2 p, double m) const {
    const auto& pp = pieces_[static_cast<size_t>(r)];
    return pp.piece.contains_margin(pp.iso.apply_inverse(p), m);
}

void write_domain_spec(std::ostream& os, const GraphDomain& dom) {
    os.precision(17);
    os << "h0 " << dom.h0() << "\n";
    for (const auto& pp : dom.pieces()) {
        os << "piece " << pp.iso.quarters << " " << pp.iso.translation.x << " "
           << pp.iso.translation.y << " " << pp.piece.a << " " << pp.piece.delta << " "
           << pp.piece.xs.size();
        for (size_t k = 0; k < pp.piece.xs.size(); ++k)
            os << " " << pp.piece.xs[k] << " " << pp.piece.phis[k];
        os << "\n";
    }
}

GraphDomain read_domain_spec(std::istream& is) {
    std::string tok;
    double h0 = 0.0;
    std::vector<GraphDomain::PlacedPiece> pieces;
    while (is >> tok) {
        if (tok == "h0") {
            is >> h0;
        } else if (tok == "piece") {
            GraphDomain::PlacedPiece pp;
            size_t count = 0;
            is >> pp.iso.quarters >> pp.iso.translation.x >> pp.iso.translation.y >>
                pp.piece.a >> pp.piece.delta >> count;
            pp.piece.xs.resize(count);
            pp.piece.phis.resize(count);
            for (size_t k = 0; k < count; ++k) is >> pp.piece.xs[k] >> pp.piece.phis[k];
            pieces.push_back(std::move(pp));
        } else {
            throw std::runtime_error("domain spec: unknown token '" + tok + "'");
        }
    }
    return GraphDomain(std::move(pieces), h0);
}

GraphDomain load_domain_spec(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("domain spec: cannot open " + path);
    return read_domain_spec(is);
}

}  // namespace cdbs
