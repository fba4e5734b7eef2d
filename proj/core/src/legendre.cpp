#include "cdbs/legendre.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace cdbs {

namespace {

// Legendre P_n(x) and derivative, standard normalization P_n(1) = 1.
std::pair<double, double> legendre_pd(int n, double x) {
    double p0 = 1.0, p1 = x;
    if (n == 0) return {1.0, 0.0};
    for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    double d = n * (x * p1 - p0) / (x * x - 1.0);
    return {p1, d};
}

GaussRule compute_rule(int n) {
    GaussRule rule;
    rule.nodes.resize(static_cast<size_t>(n));
    rule.weights.resize(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        // Chebyshev-like initial guess, then Newton on P_n.
        double x = std::cos(M_PI * (k + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            auto [p, d] = legendre_pd(n, x);
            double dx = p / d;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        auto [p, d] = legendre_pd(n, x);
        (void)p;
        rule.nodes[static_cast<size_t>(n - 1 - k)] = x;
        rule.weights[static_cast<size_t>(n - 1 - k)] = 2.0 / ((1.0 - x * x) * d * d);
    }
    return rule;
}

}  // namespace

const GaussRule& gauss_rule(int n) {
    if (n < 1) throw std::invalid_argument("gauss rule: n must be >= 1");
    static std::map<int, GaussRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
    return it->second;
}

LegendreBasis::LegendreBasis(double a, double b, int order) : a_(a), b_(b), order_(order) {
    if (!(b > a)) throw std::invalid_argument("legendre basis: zero-length interval");
    if (order < 1) throw std::invalid_argument("legendre basis: order must be >= 1");
}

double LegendreBasis::eval(int alpha, double x) const {
    double t = (2.0 * x - a_ - b_) / (b_ - a_);
    double p0 = 1.0, p1 = t;
    double p = (alpha == 0) ? 1.0 : t;
    for (int k = 2; k <= alpha; ++k) {
        p = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p;
    }
    return std::sqrt((2.0 * alpha + 1.0) / (b_ - a_)) * p;
}

double LegendreBasis::sup_norm(int alpha) const {
    return std::sqrt((2.0 * alpha + 1.0) / (b_ - a_));
}

}  // namespace cdbs
