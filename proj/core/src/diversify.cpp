#include "cdbs/diversify.hpp"

#include <algorithm>
#include <cassert>
#include <random>
#include <stdexcept>

namespace cdbs {

BitmapRegion::BitmapRegion(const GraphDomain& dom, double eps) : eps_(eps) {
    if (eps <= 0) throw std::invalid_argument("bitmap region: eps must be positive");
    Box clip = neighbourhood(dom.bounding_box(), {eps, eps});
    detail::center_span(clip, eps, ua_, va_, ub_, vb_);
    size_t w = static_cast<size_t>(ub_ - ua_ + 1);
    size_t h = static_cast<size_t>(vb_ - va_ + 1);
    bits_.assign((w * h + 63) / 64, 0);
    count_ = 0;
    for (long v = va_; v <= vb_; ++v) {
        for (long u = ua_; u <= ub_; ++u) {
            if (!dom.contains(cell_center({u, v}, eps))) continue;
            size_t idx = static_cast<size_t>(v - va_) * w + static_cast<size_t>(u - ua_);
            bits_[idx >> 6] |= (uint64_t{1} << (idx & 63));
            ++count_;
        }
    }
}

std::vector<ComponentMask> BitmapRegion::components(const Box& box) const {
    long ua, va, ub, vb;
    detail::center_span(box, eps_, ua, va, ub, vb);
    ua = std::max(ua, ua_);
    ub = std::min(ub, ub_);
    va = std::max(va, va_);
    vb = std::min(vb, vb_);
    if (ua > ub || va > vb) return {};
    return detail::label_components(ua, va, ub, vb, eps_,
                                    [this](Cell c) { return marked(c); });
}

namespace {

// Do the two masks share a cell whose center lies in the box?
bool masks_overlap_in_box(const ComponentMask& a, const ComponentMask& b, const Box& box,
                          double eps) {
    long ua = std::max(a.u0(), b.u0());
    long ub = std::min(a.u0() + a.width(), b.u0() + b.width());
    long va = std::max(a.v0(), b.v0());
    long vb = std::min(a.v0() + a.height(), b.v0() + b.height());
    long bua, bva, bub, bvb;
    detail::center_span(box, eps, bua, bva, bub, bvb);
    ua = std::max(ua, bua);
    ub = std::min(ub, bub + 1);
    va = std::max(va, bva);
    vb = std::min(vb, bvb + 1);
    for (long v = va; v < vb; ++v)
        for (long u = ua; u < ub; ++u)
            if (a.marked({u, v}) && b.marked({u, v})) return true;
    return false;
}

}  // namespace

DiversifiedSpace::DiversifiedSpace(TensorSpace space, GraphDomain dom, double eps)
    : space_(std::move(space)), dom_(std::move(dom)), eps_(eps), raster_(dom_, eps) {
    build_splines();
    build_cells();
}

int DiversifiedSpace::group_at(Index2 i) const {
    auto r1 = space_.active_range1();
    auto r2 = space_.active_range2();
    if (i.i1 < r1[0] || i.i1 > r1[1] || i.i2 < r2[0] || i.i2 > r2[1]) return -1;
    size_t idx = static_cast<size_t>(i.i1 - r1[0]) * static_cast<size_t>(r2[1] - r2[0] + 1) +
                 static_cast<size_t>(i.i2 - r2[0]);
    return group_index_[idx];
}

void DiversifiedSpace::build_splines() {
    auto r1 = space_.active_range1();
    auto r2 = space_.active_range2();
    const KnotWindow& t1 = space_.t(0);
    const KnotWindow& t2 = space_.t(1);
    int n1 = t1.order(), n2 = t2.order();

    group_index_.assign(static_cast<size_t>(r1[1] - r1[0] + 1) *
                            static_cast<size_t>(r2[1] - r2[0] + 1),
                        -1);

    // Strip components depend on one index only, so cache per row/column.
    std::unordered_map<int, std::vector<ComponentMask>> row_strips, col_strips;
    auto row_strip = [&](int i2) -> const std::vector<ComponentMask>& {
        auto it = row_strips.find(i2);
        if (it == row_strips.end()) {
            Box strip{{-kInf, t2.knot(i2)}, {kInf, t2.knot(i2 + n2)}};
            it = row_strips.emplace(i2, raster_.components(strip)).first;
        }
        return it->second;
    };
    auto col_strip = [&](int i1) -> const std::vector<ComponentMask>& {
        auto it = col_strips.find(i1);
        if (it == col_strips.end()) {
            Box strip{{t1.knot(i1), -kInf}, {t1.knot(i1 + n1), kInf}};
            it = col_strips.emplace(i1, raster_.components(strip)).first;
        }
        return it->second;
    };

    for (int i1 = r1[0]; i1 <= r1[1]; ++i1) {
        for (int i2 = r2[0]; i2 <= r2[1]; ++i2) {
            Index2 i{i1, i2};
            std::vector<ComponentMask> comps = raster_.components(space_.support(i));
            if (comps.empty()) continue;

            Group g;
            g.i = i;
            g.first_spline = static_cast<int>(splines_.size());
            g.comps = std::move(comps);
            int gid = static_cast<int>(groups_.size());

            for (int c = 0; c < static_cast<int>(g.comps.size()); ++c) {
                const ComponentMask& gamma = g.comps[static_cast<size_t>(c)];
                Vec2 rep = cell_center(gamma.min_cell(), eps_);

                const ComponentMask* w1 = component_of(row_strip(i2), rep);
                const ComponentMask* w2 = component_of(col_strip(i1), rep);
                assert(w1 && w2 && "support component escapes its strip");

                CdBSpline s;
                s.j = {i, c};
                s.group = gid;
                s.comp = c;
                s.omega1 = {w1->bbox().lo.x, w1->bbox().hi.x};
                s.omega2 = {w2->bbox().lo.y, w2->bbox().hi.y};
                s.tstar1 = condense(t1, s.omega1);
                s.tstar2 = condense(t2, s.omega2);
                s.changed1 = !(s.tstar1 == t1);
                s.changed2 = !(s.tstar2 == t2);
                s.support = Box{{s.tstar1.knot(i1), s.tstar2.knot(i2)},
                                {s.tstar1.knot(i1 + n1), s.tstar2.knot(i2 + n2)}};
                s.hstar = {s.tstar1.max_spacing(s.omega1.lo, s.omega1.hi),
                           s.tstar2.max_spacing(s.omega2.lo, s.omega2.hi)};
                splines_.push_back(std::move(s));
            }

            size_t idx = static_cast<size_t>(i1 - r1[0]) * static_cast<size_t>(r2[1] - r2[0] + 1) +
                         static_cast<size_t>(i2 - r2[0]);
            group_index_[idx] = gid;
            groups_.push_back(std::move(g));
        }
    }
}

void DiversifiedSpace::build_cells() {
    auto c1 = space_.cell_range1();
    auto c2 = space_.cell_range2();
    if (c1[0] > c1[1] || c2[0] > c2[1]) return;
    int n1 = space_.order(0), n2 = space_.order(1);

    cell_first_.assign(static_cast<size_t>(c1[1] - c1[0] + 1) *
                           static_cast<size_t>(c2[1] - c2[0] + 1),
                       -1);
    cell_count_.assign(cell_first_.size(), 0);

    for (int k1 = c1[0]; k1 <= c1[1]; ++k1) {
        for (int k2 = c2[0]; k2 <= c2[1]; ++k2) {
            Index2 k{k1, k2};
            std::vector<ComponentMask> comps = raster_.components(space_.cell(k));
            if (comps.empty()) continue;
            size_t idx = static_cast<size_t>(k1 - c1[0]) * static_cast<size_t>(c2[1] - c2[0] + 1) +
                         static_cast<size_t>(k2 - c2[0]);
            cell_first_[idx] = static_cast<int>(cells_.size());
            cell_count_[idx] = static_cast<int>(comps.size());

            for (int c = 0; c < static_cast<int>(comps.size()); ++c) {
                CellComponent cc;
                cc.k = k;
                cc.gamma = c;
                cc.mask = std::move(comps[static_cast<size_t>(c)]);

                for (int i1 = k1 - n1; i1 <= k1 - 1; ++i1) {
                    for (int i2 = k2 - n2; i2 <= k2 - 1; ++i2) {
                        int gid = group_at({i1, i2});
                        if (gid < 0) continue;
                        const Group& g = groups_[static_cast<size_t>(gid)];
                        int hit = -1;
                        for (int gc = 0; gc < static_cast<int>(g.comps.size()); ++gc) {
                            int sid = g.first_spline + gc;
                            const CdBSpline& s = splines_[static_cast<size_t>(sid)];
                            if (masks_overlap_in_box(g.comps[static_cast<size_t>(gc)], cc.mask,
                                                     s.support, eps_)) {
                                assert(hit < 0 && "cell component meets two copies of one spline");
                                hit = sid;
                            }
                        }
                        if (hit >= 0) {
                            cc.relevant.push_back(hit);
                            cc.relevant_bound.expand(splines_[static_cast<size_t>(hit)].support);
                        }
                    }
                }
                assert(static_cast<int>(cc.relevant.size()) <= n1 * n2);
                cells_.push_back(std::move(cc));
            }
        }
    }
}

double DiversifiedSpace::eval(int j, Vec2 x) const {
    const CdBSpline& s = splines_[static_cast<size_t>(j)];
    if (!mask_of(s).covers(x)) return 0.0;
    double b1 = eval_bspline(s.tstar1, s.j.i.i1, x.x);
    if (b1 == 0.0) return 0.0;
    return b1 * eval_bspline(s.tstar2, s.j.i.i2, x.y);
}

int DiversifiedSpace::cells_at(Index2 k, int& count) const {
    auto c1 = space_.cell_range1();
    auto c2 = space_.cell_range2();
    count = 0;
    if (k.i1 < c1[0] || k.i1 > c1[1] || k.i2 < c2[0] || k.i2 > c2[1]) return -1;
    size_t idx = static_cast<size_t>(k.i1 - c1[0]) * static_cast<size_t>(c2[1] - c2[0] + 1) +
                 static_cast<size_t>(k.i2 - c2[0]);
    count = cell_count_[idx];
    return cell_first_[idx];
}

const CellComponent* DiversifiedSpace::locate_cell(Vec2 x) const {
    int count = 0;
    int first = cells_at(space_.locate(x), count);
    if (first < 0) return nullptr;
    for (int c = 0; c < count; ++c) {
        const CellComponent& cc = cells_[static_cast<size_t>(first + c)];
        if (cc.mask.covers(x)) return &cc;
    }
    return nullptr;
}

double DiversifiedSpace::eval_combination(const std::vector<double>& coeffs, Vec2 x) const {
    const CellComponent* cc = locate_cell(x);
    if (!cc) return 0.0;
    double total = 0.0;
    for (int j : cc->relevant) total += coeffs[static_cast<size_t>(j)] * eval(j, x);
    return total;
}

std::vector<Vec2> DiversifiedSpace::sample_points(int count, unsigned long long seed) const {
    std::vector<Cell> cells;
    cells.reserve(static_cast<size_t>(raster_.cell_count()));
    raster_.for_each_cell([&](Cell c) { cells.push_back(c); });
    if (cells.empty()) return {};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<size_t> pick(0, cells.size() - 1);
    std::vector<Vec2> pts;
    pts.reserve(static_cast<size_t>(count));
    for (int s = 0; s < count; ++s) pts.push_back(cell_center(cells[pick(rng)], eps_));
    return pts;
}

}  // namespace cdbs
