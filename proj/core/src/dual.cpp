#include "cdbs/dual.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace cdbs {

namespace {

double int_pow(double base, int e) {
    if (e == 0) return 1.0;  // includes 0^0 := 1
    double v = 1.0;
    for (int k = 0; k < e; ++k) v *= base;
    return v;
}

struct WeightSystem {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu;
    double inv_inf_norm = 0.0;
};

const WeightSystem& weight_system(int n) {
    static std::map<int, WeightSystem> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) {
        Eigen::MatrixXd A(n, n);
        for (int l = 1; l <= n; ++l)
            for (int m = 1; m <= n; ++m) A(l - 1, m - 1) = int_pow(static_cast<double>(m - l), n - 1);
        WeightSystem ws;
        ws.lu = Eigen::PartialPivLU<Eigen::MatrixXd>(A);
        Eigen::MatrixXd inv = ws.lu.inverse();
        ws.inv_inf_norm = inv.cwiseAbs().rowwise().sum().maxCoeff();
        it = cache.emplace(n, std::move(ws)).first;
    }
    return it->second;
}

// psi_i(t) = (tau_{i+1} - t) ... (tau_{i+n-1} - t); empty product for n = 1.
double psi(const KnotWindow& T, int i, double t) {
    double v = 1.0;
    for (int k = i + 1; k <= i + T.order() - 1; ++k) v *= T.knot(k) - t;
    return v;
}

// Longest knot interval [tau_j, tau_{j+1}) of supp b_i, leftmost on ties.
std::pair<int, double> longest_cell(const KnotWindow& T, int i) {
    int n = T.order();
    int best = i;
    double len = -1.0;
    for (int j = i; j < i + n; ++j) {
        double l = T.knot(j + 1) - T.knot(j);
        if (l > len) {  // strict: leftmost interval wins ties
            len = l;
            best = j;
        }
    }
    return {best, len};
}

}  // namespace

DualWeights dual_weights(const KnotWindow& T, int i) {
    int n = T.order();
    if (!T.stores(i) || !T.stores(i + n)) throw std::out_of_range("knot window underflow");
    if (!(T.knot(i) < T.knot(i + n)))
        throw std::invalid_argument("dual weights: spline has empty support");

    auto [j, len] = longest_cell(T, i);
    DualWeights dw;
    dw.index = i;
    dw.anchor_lo = T.knot(j);
    dw.anchor_hi = T.knot(j + 1);
    dw.points.resize(static_cast<size_t>(n));
    dw.weights.resize(static_cast<size_t>(n));
    for (int m = 1; m <= n; ++m) {
        double frac = (n == 1) ? 0.0 : static_cast<double>(m - 1) / (n - 1);
        dw.points[static_cast<size_t>(m - 1)] = dw.anchor_lo + frac * len;
    }

    Eigen::VectorXd rhs(n);
    double scale = int_pow(static_cast<double>(n - 1), n - 1) / int_pow(len, n - 1);
    for (int l = 1; l <= n; ++l)
        rhs(l - 1) = scale * psi(T, i, dw.points[static_cast<size_t>(l - 1)]);

    const WeightSystem& ws = weight_system(n);
    Eigen::VectorXd w = ws.lu.solve(rhs);
    if (!w.allFinite()) throw std::runtime_error("dual weights: singular system");
    for (int m = 0; m < n; ++m) dw.weights[static_cast<size_t>(m)] = w(m);
    return dw;
}

double dual_rhs_bound(const KnotWindow& T, int i) {
    int n = T.order();
    auto [j, len] = longest_cell(T, i);
    (void)j;
    double scale = int_pow(static_cast<double>(n - 1), n - 1) / int_pow(len, n - 1);
    double supp = T.knot(i + n) - T.knot(i);
    return scale * int_pow(supp, n - 1);
}

double dual_weight_bound(int n) {
    return weight_system(n).inv_inf_norm * std::pow(static_cast<double>(n), 2.0 * n);
}

std::map<int, double> represent_polynomial(const KnotWindow& T, const Poly1& p, Interval omega) {
    if (p.degree() >= T.order())
        throw std::invalid_argument("represent_polynomial: degree must be below the order");
    std::map<int, double> coeff;
    for (int i : active_indices(T, omega)) {
        DualWeights dw = dual_weights(T, i);
        double s = 0.0;
        for (size_t m = 0; m < dw.points.size(); ++m) s += dw.weights[m] * p(dw.points[m]);
        coeff[i] = s;
    }
    return coeff;
}

}  // namespace cdbs
