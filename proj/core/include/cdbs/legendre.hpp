#pragma once

#include <vector>

namespace cdbs {

/// Gauss-Legendre rule on [-1, 1], exact for polynomials of degree 2n-1.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Nodes and weights for the n-point rule (cached per n, thread-safe).
const GaussRule& gauss_rule(int n);

/// Integrate g over [a, b] with an n-point Gauss rule split into panels.
template <class F>
double gauss_integrate(F&& g, double a, double b, int n, int panels = 1) {
    const GaussRule& rule = gauss_rule(n);
    double total = 0.0;
    double w = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        double lo = a + p * w;
        double mid = lo + 0.5 * w;
        double half = 0.5 * w;
        for (size_t q = 0; q < rule.nodes.size(); ++q)
            total += rule.weights[q] * half * g(mid + half * rule.nodes[q]);
    }
    return total;
}

/// Orthonormal Legendre basis over an interval [a, b]: the polynomials
/// l_alpha, alpha < order, with integral of l_a*l_b over the interval equal
/// to delta_ab. Realized through the classical three-term recurrence mapped
/// affinely onto the interval, so evaluation is valid for any real x.
class LegendreBasis {
  public:
    LegendreBasis(double a, double b, int order);

    double a() const { return a_; }
    double b() const { return b_; }
    double length() const { return b_ - a_; }
    int order() const { return order_; }

    double eval(int alpha, double x) const;

    /// Sup norm over the interval: sqrt((2 alpha + 1) / length).
    double sup_norm(int alpha) const;

  private:
    double a_, b_;
    int order_;
};

}  // namespace cdbs
