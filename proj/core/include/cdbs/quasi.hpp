#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "cdbs/diversify.hpp"
#include "cdbs/dual.hpp"
#include "cdbs/legendre.hpp"

namespace cdbs {

using Field = std::function<double(Vec2)>;

/// Point-evaluation functional P_j: tensor product of the per-direction
/// dual weights on the condensed knots, anchored at the largest subcell of
/// the unrestricted condensed support (leftmost on ties, per direction).
struct PjFunctional {
    int j = 0;
    DualWeights w1, w2;

    /// P_j applied to a bivariate evaluable (exact for polynomials of
    /// coordinate order up to (n1, n2)).
    double apply(const Field& p) const {
        double total = 0.0;
        for (size_t m1 = 0; m1 < w1.points.size(); ++m1) {
            double row = 0.0;
            for (size_t m2 = 0; m2 < w2.points.size(); ++m2)
                row += w2.weights[m2] * p({w1.points[m1], w2.points[m2]});
            total += w1.weights[m1] * row;
        }
        return total;
    }
};

/// Neighbourhood boxes used by the local projection: the local
/// h*-neighbourhood S_j^+ of the support, the interval H_j^* of size h_j^*
/// found inside it, and the inflated diagnostic box H_j^+.
struct LocalBoxes {
    ComponentMask splus;
    Box hstar;
    Box hplus;  // recorded for diagnostics only
};

/// L2(H*) projection onto tensor polynomials of coordinate order (n1, n2),
/// realized in the orthonormal Legendre basis over H* with a tensor Gauss
/// rule (max(n1, n2) + 2 nodes per direction and panel).
class LocalProjector {
  public:
    LocalProjector(const Box& hstar, int n1, int n2, int panels = 1);

    /// Legendre coefficients of the projection of f.
    std::vector<double> project(const Field& f) const;

    /// Evaluate the projected polynomial anywhere (polynomial extension).
    double eval(const std::vector<double>& coeffs, Vec2 x) const;

    const LegendreBasis& basis1() const { return l1_; }
    const LegendreBasis& basis2() const { return l2_; }

  private:
    LegendreBasis l1_, l2_;
    int n1_, n2_, panels_;
};

PjFunctional build_pj(const CdBSpline& c);

/// Find S_j^+ and an interval H_j^* of size hstar fully inside it. Tries
/// the anchored construction at the lower edge of the support first, then a
/// row-major raster scan. Throws when no box exists.
LocalBoxes find_hstar(const DiversifiedSpace& ds, int j);

/// The assembled quasi-interpolant machinery for one diversified space;
/// everything here is independent of the approximated field.
class QuasiOperator {
  public:
    explicit QuasiOperator(const DiversifiedSpace& ds, int panels = 1);

    const DiversifiedSpace& space() const { return *ds_; }
    const PjFunctional& pj(int j) const { return pjs_[static_cast<size_t>(j)]; }
    const LocalBoxes& boxes(int j) const { return boxes_[static_cast<size_t>(j)]; }

    /// Q_j f for a single j.
    double coefficient(int j, const Field& f) const;
    /// Q_j f for all j in index order.
    std::vector<double> coefficients(const Field& f) const;

  private:
    const DiversifiedSpace* ds_;
    std::vector<PjFunctional> pjs_;
    std::vector<LocalBoxes> boxes_;
    std::vector<LocalProjector> projectors_;
};

/// Coefficient map of the quasi-interpolant for one field.
struct QuasiInterpolantResult {
    std::vector<double> coeffs;  // j -> Q_j f
};

QuasiInterpolantResult quasi_interpolate(const QuasiOperator& op, const Field& f);

/// Qf at a point of the domain; throws std::domain_error off the raster.
double eval_q(const DiversifiedSpace& ds, const QuasiInterpolantResult& r, Vec2 x);

/// Max over sample points of |sum_j B_j^*(x) P_j p - p(x)| for the monomial
/// x1^d1 x2^d2, using the direct spline representation of polynomials
/// (no local projection involved).
double reproduce_poly_check(const DiversifiedSpace& ds, const QuasiOperator& op, int d1, int d2,
                            const std::vector<Vec2>& samples);

/// ||f||_{box,p} by tensor Gauss quadrature (p = 1, 2) or a dense grid max
/// (p = infinity, signalled by p <= 0).
double box_norm(const Field& f, const Box& box, double p, int nodes = 8, int panels = 4);

}  // namespace cdbs
