#include "cdbs/quasi.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace cdbs {

LocalProjector::LocalProjector(const Box& hstar, int n1, int n2, int panels)
    : l1_(hstar.lo.x, hstar.hi.x, n1), l2_(hstar.lo.y, hstar.hi.y, n2), n1_(n1), n2_(n2),
      panels_(panels) {}

std::vector<double> LocalProjector::project(const Field& f) const {
    int q = std::max(n1_, n2_) + 2;
    const GaussRule& rule = gauss_rule(q);

    // Tensor quadrature nodes over H*, panel by panel.
    std::vector<double> xs, ws1, ys, ws2;
    auto fill = [&](double a, double b, std::vector<double>& nodes, std::vector<double>& wts) {
        double w = (b - a) / panels_;
        for (int p = 0; p < panels_; ++p) {
            double mid = a + (p + 0.5) * w;
            for (size_t k = 0; k < rule.nodes.size(); ++k) {
                nodes.push_back(mid + 0.5 * w * rule.nodes[k]);
                wts.push_back(0.5 * w * rule.weights[k]);
            }
        }
    };
    fill(l1_.a(), l1_.b(), xs, ws1);
    fill(l2_.a(), l2_.b(), ys, ws2);

    std::vector<double> coeffs(static_cast<size_t>(n1_ * n2_), 0.0);
    for (size_t ix = 0; ix < xs.size(); ++ix) {
        for (size_t iy = 0; iy < ys.size(); ++iy) {
            double fw = f({xs[ix], ys[iy]}) * ws1[ix] * ws2[iy];
            for (int a1 = 0; a1 < n1_; ++a1) {
                double lx = l1_.eval(a1, xs[ix]);
                for (int a2 = 0; a2 < n2_; ++a2)
                    coeffs[static_cast<size_t>(a1 * n2_ + a2)] += fw * lx * l2_.eval(a2, ys[iy]);
            }
        }
    }
    return coeffs;
}

double LocalProjector::eval(const std::vector<double>& coeffs, Vec2 x) const {
    double total = 0.0;
    for (int a1 = 0; a1 < n1_; ++a1) {
        double lx = l1_.eval(a1, x.x);
        for (int a2 = 0; a2 < n2_; ++a2)
            total += coeffs[static_cast<size_t>(a1 * n2_ + a2)] * lx * l2_.eval(a2, x.y);
    }
    return total;
}

PjFunctional build_pj(const CdBSpline& c) {
    PjFunctional pj;
    pj.w1 = dual_weights(c.tstar1, c.j.i.i1);
    pj.w2 = dual_weights(c.tstar2, c.j.i.i2);
    return pj;
}

namespace {

// Cells whose centers lie in the box are all marked in the mask.
bool box_inside(const ComponentMask::Sat& sat, const Box& box, double eps) {
    long ua, va, ub, vb;
    detail::center_span(box, eps, ua, va, ub, vb);
    if (ua > ub || va > vb) return false;
    long want = (ub - ua + 1) * (vb - va + 1);
    return sat.count(ua, va, ub + 1, vb + 1) == want;
}

}  // namespace

LocalBoxes find_hstar(const DiversifiedSpace& ds, int j) {
    const CdBSpline& s = ds.splines()[static_cast<size_t>(j)];
    const ComponentMask& gamma = ds.mask_of(s);
    double eps = ds.eps();
    Vec2 hstar = s.hstar;

    LocalBoxes out;
    out.splus = local_neighbourhood(ds.domain(), gamma, hstar);
    ComponentMask::Sat sat = out.splus.build_sat();

    auto try_box = [&](double x0, double y0) -> bool {
        Box cand{{x0, y0}, {x0 + hstar.x, y0 + hstar.y}};
        if (!box_inside(sat, cand, eps)) return false;
        out.hstar = cand;
        return true;
    };

    // Anchored construction: a box of width hstar.x hugging the lower edge
    // of the support from below, slid along omega_1 left to right.
    {
        double y0 = s.support.lo.y - hstar.y;
        double xa = std::max(s.omega1.lo, s.support.lo.x - hstar.x);
        double xb = std::min(s.omega1.hi - hstar.x, s.support.hi.x);
        long ua = static_cast<long>(std::ceil(xa / eps));
        long ub = static_cast<long>(std::floor(xb / eps));
        for (long u = ua; u <= ub; ++u)
            if (try_box(u * eps, y0)) {
                out.hplus = neighbourhood(out.hstar, {ds.space().max_order() * hstar.x,
                                                      ds.space().max_order() * hstar.y});
                return out;
            }
    }

    // Fallback: row-major scan over the S_j^+ bounding box on the raster.
    const Box& bb = out.splus.bbox();
    long va = static_cast<long>(std::ceil(bb.lo.y / eps));
    long vb = static_cast<long>(std::floor((bb.hi.y - hstar.y) / eps));
    long ua = static_cast<long>(std::ceil(bb.lo.x / eps));
    long ub = static_cast<long>(std::floor((bb.hi.x - hstar.x) / eps));
    for (long v = va; v <= vb; ++v)
        for (long u = ua; u <= ub; ++u)
            if (try_box(u * eps, v * eps)) {
                out.hplus = neighbourhood(out.hstar, {ds.space().max_order() * hstar.x,
                                                      ds.space().max_order() * hstar.y});
                return out;
            }

    throw std::runtime_error(
        "H* not found (domain/grid violates h <= h0/(max order + 1) assumptions)");
}

QuasiOperator::QuasiOperator(const DiversifiedSpace& ds, int panels) : ds_(&ds) {
    size_t count = ds.splines().size();
    pjs_.reserve(count);
    boxes_.reserve(count);
    projectors_.reserve(count);
    for (size_t j = 0; j < count; ++j) {
        try {
            pjs_.push_back(build_pj(ds.splines()[j]));
            pjs_.back().j = static_cast<int>(j);
            boxes_.push_back(find_hstar(ds, static_cast<int>(j)));
        } catch (const std::exception& e) {
            throw std::runtime_error("quasi-interpolant setup failed at spline " +
                                     std::to_string(j) + ": " + e.what());
        }
        projectors_.emplace_back(boxes_.back().hstar, ds.space().order(0), ds.space().order(1),
                                 panels);
    }
}

double QuasiOperator::coefficient(int j, const Field& f) const {
    const LocalProjector& proj = projectors_[static_cast<size_t>(j)];
    std::vector<double> c = proj.project(f);
    return pjs_[static_cast<size_t>(j)].apply(
        [&](Vec2 x) { return proj.eval(c, x); });
}

std::vector<double> QuasiOperator::coefficients(const Field& f) const {
    std::vector<double> out(pjs_.size());
    for (size_t j = 0; j < pjs_.size(); ++j) out[j] = coefficient(static_cast<int>(j), f);
    return out;
}

QuasiInterpolantResult quasi_interpolate(const QuasiOperator& op, const Field& f) {
    return {op.coefficients(f)};
}

double eval_q(const DiversifiedSpace& ds, const QuasiInterpolantResult& r, Vec2 x) {
    const CellComponent* cc = ds.locate_cell(x);
    if (!cc) throw std::domain_error("eval_q: point lies outside the rasterized domain");
    double total = 0.0;
    for (int j : cc->relevant) total += r.coeffs[static_cast<size_t>(j)] * ds.eval(j, x);
    return total;
}

double reproduce_poly_check(const DiversifiedSpace& ds, const QuasiOperator& op, int d1, int d2,
                            const std::vector<Vec2>& samples) {
    Field mono = [d1, d2](Vec2 x) { return std::pow(x.x, d1) * std::pow(x.y, d2); };
    std::vector<double> coeffs(ds.splines().size());
    for (size_t j = 0; j < coeffs.size(); ++j) coeffs[j] = op.pj(static_cast<int>(j)).apply(mono);
    double worst = 0.0;
    for (Vec2 x : samples)
        worst = std::max(worst, std::abs(ds.eval_combination(coeffs, x) - mono(x)));
    return worst;
}

double box_norm(const Field& f, const Box& box, double p, int nodes, int panels) {
    if (p <= 0) {  // sup norm on a dense grid
        double m = 0.0;
        int grid = nodes * panels;
        for (int ix = 0; ix <= grid; ++ix)
            for (int iy = 0; iy <= grid; ++iy) {
                Vec2 x{box.lo.x + (box.hi.x - box.lo.x) * ix / grid,
                       box.lo.y + (box.hi.y - box.lo.y) * iy / grid};
                m = std::max(m, std::abs(f(x)));
            }
        return m;
    }
    double integral = gauss_integrate(
        [&](double y) {
            return gauss_integrate([&](double x) { return std::pow(std::abs(f({x, y})), p); },
                                   box.lo.x, box.hi.x, nodes, panels);
        },
        box.lo.y, box.hi.y, nodes, panels);
    return std::pow(integral, 1.0 / p);
}

}  // namespace cdbs
