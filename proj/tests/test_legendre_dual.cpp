#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>

#include "cdbs/dual.hpp"
#include "cdbs/legendre.hpp"

using namespace cdbs;

namespace {

// ||l||_{I,p} by many-panel quadrature (|l| has kinks at the roots).
double poly_lp_norm(const LegendreBasis& basis, int alpha, double p) {
    double integral = gauss_integrate(
        [&](double x) { return std::pow(std::abs(basis.eval(alpha, x)), p); }, basis.a(),
        basis.b(), 12, 64);
    return std::pow(integral, 1.0 / p);
}

double grid_sup_norm(const LegendreBasis& basis, int alpha) {
    double m = 0.0;
    for (int s = 0; s <= 4000; ++s) {
        double x = basis.a() + (basis.b() - basis.a()) * s / 4000.0;
        m = std::max(m, std::abs(basis.eval(alpha, x)));
    }
    return m;
}

KnotWindow random_window(std::mt19937_64& rng, int order, int count, double aspect = 1.0) {
    std::uniform_real_distribution<double> u(0.05, 1.0);
    std::vector<double> knots;
    double t = 0.0;
    for (int k = 0; k < count; ++k) {
        knots.push_back(t);
        double step = u(rng);
        if (aspect > 1.0 && (rng() & 1)) step *= aspect;  // wildly uneven spacing
        t += step;
    }
    return KnotWindow(std::move(knots), order, 0);
}

}  // namespace

TEST_CASE("gauss rules integrate polynomials exactly") {
    for (int n = 1; n <= 8; ++n) {
        for (int d = 0; d <= 2 * n - 1; ++d) {
            double got = gauss_integrate([d](double x) { return std::pow(x, d); }, -1.0, 1.0, n);
            double expect = (d % 2 == 1) ? 0.0 : 2.0 / (d + 1);
            CHECK(got == doctest::Approx(expect).epsilon(1e-13).scale(1.0));
        }
    }
}

TEST_CASE("orthonormal interval basis") {
    SUBCASE("constant member is the normalization") {
        LegendreBasis b(0.0, 4.0, 1);
        CHECK(b.eval(0, 1.7) == doctest::Approx(0.5).epsilon(1e-15));
    }
    SUBCASE("linear member matches the Gram-Schmidt oracle") {
        // Orthonormalize {1, x} on [0,1] by hand: e1 = 1, e2 = sqrt(3)(2x-1).
        LegendreBasis b(0.0, 1.0, 2);
        for (double x : {0.0, 0.3, 0.5, 0.81, 1.0})
            CHECK(b.eval(1, x) == doctest::Approx(std::sqrt(3.0) * (2 * x - 1)).epsilon(1e-13));
    }
    SUBCASE("orthonormality within quadrature tolerance") {
        for (double h : {0.1, 1.0, 10.0}) {
            LegendreBasis b(2.0, 2.0 + h, 5);
            for (int a = 0; a < 5; ++a) {
                for (int c = 0; c < 5; ++c) {
                    double ip = gauss_integrate(
                        [&](double x) { return b.eval(a, x) * b.eval(c, x); }, b.a(), b.b(), 8);
                    CHECK(ip == doctest::Approx(a == c ? 1.0 : 0.0).epsilon(1e-12).scale(1.0));
                }
            }
        }
    }
    SUBCASE("norm product bound with constant 2n-1") {
        for (int n = 1; n <= 5; ++n) {
            for (double h : {0.1, 1.0, 10.0}) {
                LegendreBasis b(0.0, h, n);
                for (int alpha = 0; alpha < n; ++alpha) {
                    double sup = grid_sup_norm(b, alpha);
                    CHECK(sup <= b.sup_norm(alpha) + 1e-10);
                    for (double p : {1.0, 2.0}) {
                        double bound = (2.0 * n - 1.0) * std::pow(h, 1.0 / p - 1.0);
                        CHECK(poly_lp_norm(b, alpha, p) * sup <= bound * (1 + 1e-10));
                    }
                    double bound_inf = (2.0 * n - 1.0) / h;  // p = infinity
                    CHECK(sup * sup <= bound_inf * (1 + 1e-10));
                }
            }
        }
    }
    SUBCASE("degenerate interval rejected") {
        CHECK_THROWS_AS(LegendreBasis(1.0, 1.0, 2), std::invalid_argument);
    }
}

TEST_CASE("dual weights") {
    SUBCASE("order one is point evaluation at the cell's left knot") {
        KnotWindow t({0.0, 2.0}, 1, 0);
        DualWeights dw = dual_weights(t, 0);
        REQUIRE(dw.points.size() == 1);
        CHECK(dw.points[0] == 0.0);
        CHECK(dw.weights[0] == doctest::Approx(1.0));
    }
    SUBCASE("order two anchors at the longest cell and reproduces Greville") {
        KnotWindow t({0.0, 1.0, 3.0}, 2, 0);
        DualWeights dw = dual_weights(t, 0);
        CHECK(dw.anchor_lo == 1.0);
        CHECK(dw.anchor_hi == 3.0);
        REQUIRE(dw.points.size() == 2);
        CHECK(dw.points[0] == doctest::Approx(1.0));
        CHECK(dw.points[1] == doctest::Approx(3.0));
        // Coefficient of p(x) = x must be the Greville abscissa tau_1 = 1.
        double s = dw.weights[0] * dw.points[0] + dw.weights[1] * dw.points[1];
        CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("right-hand side stays below n^(2n)") {
        std::mt19937_64 rng(5);
        for (int rep = 0; rep < 100; ++rep) {
            int n = 2 + static_cast<int>(rng() % 4);
            KnotWindow t = random_window(rng, n, n + 3);
            CHECK(dual_rhs_bound(t, 0) <= std::pow(double(n), 2.0 * n) * (1 + 1e-12));
        }
    }
    SUBCASE("weights bounded independently of knot aspect") {
        std::mt19937_64 rng(17);
        for (int n = 2; n <= 5; ++n) {
            double worst_mild = 0.0, worst_wild = 0.0;
            for (int rep = 0; rep < 500; ++rep) {
                KnotWindow mild = random_window(rng, n, n + 4, 1.0);
                KnotWindow wild = random_window(rng, n, n + 4, 1000.0);
                for (const auto* t : {&mild, &wild}) {
                    DualWeights dw = dual_weights(*t, 0);
                    double m = 0.0;
                    for (double w : dw.weights) m = std::max(m, std::abs(w));
                    (t == &mild ? worst_mild : worst_wild) = std::max(t == &mild ? worst_mild : worst_wild, m);
                }
            }
            CHECK(worst_mild <= dual_weight_bound(n));
            CHECK(worst_wild <= dual_weight_bound(n));
        }
    }
    SUBCASE("anchor cell is at least a 1/n fraction of the support") {
        std::mt19937_64 rng(71);
        for (int rep = 0; rep < 200; ++rep) {
            int n = 2 + static_cast<int>(rng() % 4);
            KnotWindow t = random_window(rng, n, n + 4, 50.0);
            DualWeights dw = dual_weights(t, 0);
            double supp = t.knot(n) - t.knot(0);
            CHECK(dw.anchor_hi - dw.anchor_lo >= supp / n - 1e-12);
        }
    }
    SUBCASE("empty support rejected") {
        KnotWindow t({0, 0, 0, 1}, 2, 0);
        CHECK_THROWS_AS(dual_weights(t, 0), std::invalid_argument);
    }
}

TEST_CASE("polynomial representation in the spline basis") {
    SUBCASE("constants give the unit coefficient vector") {
        std::mt19937_64 rng(3);
        KnotWindow t = random_window(rng, 3, 12);
        Interval omega{t.knot(3), t.knot(8)};
        auto coeff = represent_polynomial(t, Poly1{{1.0}}, omega);
        for (const auto& [i, s] : coeff) CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("identity gives Greville abscissae on integer knots") {
        KnotWindow t = uniform_window(1.0, -1, 6, 3, 2);
        Interval omega{0.0, 5.0};
        auto coeff = represent_polynomial(t, Poly1{{0.0, 1.0}}, omega);
        for (const auto& [i, s] : coeff)
            CHECK(s == doctest::Approx((t.knot(i + 1) + t.knot(i + 2)) / 2.0).epsilon(1e-12));
    }
    SUBCASE("quadratics reproduced pointwise on random knots") {
        std::mt19937_64 rng(41);
        for (int rep = 0; rep < 20; ++rep) {
            KnotWindow t = random_window(rng, 3, 14);
            Interval omega{t.knot(4), t.knot(9)};
            Poly1 p{{0.3, -1.2, 0.7}};
            auto coeff = represent_polynomial(t, p, omega);
            std::uniform_real_distribution<double> ux(omega.lo, omega.hi);
            double sup = 0.0;
            for (double x = omega.lo; x < omega.hi; x += omega.length() / 50) sup = std::max(sup, std::abs(p(x)));
            for (int s = 0; s < 200; ++s) {
                double x = ux(rng);
                double val = 0.0;
                for (const auto& [i, c] : coeff) val += c * eval_bspline(t, i, x);
                CHECK(std::abs(val - p(x)) <= 1e-9 * (1.0 + sup));
            }
        }
    }
    SUBCASE("degree must stay below the order") {
        KnotWindow t = uniform_window(1.0, 0, 3, 2, 2);
        CHECK_THROWS_AS(represent_polynomial(t, Poly1{{0, 0, 1.0}}, {0.5, 1.5}), std::invalid_argument);
    }
}
