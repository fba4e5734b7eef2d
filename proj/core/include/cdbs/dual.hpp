#pragma once

#include <functional>
#include <map>
#include <vector>

#include "cdbs/knots.hpp"

namespace cdbs {

/// Univariate polynomial in monomial form, p(x) = sum_k c_k x^k.
struct Poly1 {
    std::vector<double> coeffs;  // coeffs[k] multiplies x^k

    double operator()(double x) const {
        double v = 0.0;
        for (size_t k = coeffs.size(); k-- > 0;) v = v * x + coeffs[k];
        return v;
    }
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }

    static Poly1 monomial(int d) {
        Poly1 p;
        p.coeffs.assign(static_cast<size_t>(d) + 1, 0.0);
        p.coeffs.back() = 1.0;
        return p;
    }
};

/// Point-evaluation functional reproducing the B-spline coefficient of any
/// polynomial of order up to n: s_i = sum_m weights[m] * p(points[m]).
/// The points sit on a uniform grid in the longest knot interval of the
/// spline's support (leftmost such interval on ties).
struct DualWeights {
    int index = 0;             // spline index i
    double anchor_lo = 0.0;    // longest cell [tau_j, tau_{j+1})
    double anchor_hi = 0.0;
    std::vector<double> points;   // lambda_{i,1..n}
    std::vector<double> weights;  // w_{i,1..n}
};

/// Weights for spline i of T by solving the n-by-n system whose matrix
/// entries (m-l)^(n-1) do not depend on the knots; the factorization is
/// cached per order. Throws when tau_i == tau_{i+n} (empty support).
DualWeights dual_weights(const KnotWindow& T, int i);

/// Magnitude bound on the right-hand side of the weight system for this
/// window/index, used by the stability property tests.
double dual_rhs_bound(const KnotWindow& T, int i);

/// Largest |w| the weight system can produce for order n given the
/// theoretical right-hand side bound n^(2n) (infinity norm of the cached
/// inverse times the bound).
double dual_weight_bound(int n);

/// Coefficients s_i, i active on omega, with sum_i b_i s_i = p on omega
/// for any polynomial of degree < order.
std::map<int, double> represent_polynomial(const KnotWindow& T, const Poly1& p, Interval omega);

}  // namespace cdbs
