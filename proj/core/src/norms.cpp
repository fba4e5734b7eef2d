#include "cdbs/norms.hpp"

#include <cmath>
#include <stdexcept>

namespace cdbs {

namespace {

template <class Region>
double lp_norm_impl(const Field& g, const Region& region, double p, double eps) {
    if (region.cell_count() == 0) throw std::invalid_argument("lp_norm: empty region");
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must lie in [1, inf]");
    double cell_area = eps * eps;
    if (std::isinf(p)) {
        double m = 0.0;
        region.for_each_cell([&](Cell c) { m = std::max(m, std::abs(g(cell_center(c, eps)))); });
        return m;
    }
    double total = 0.0;
    region.for_each_cell(
        [&](Cell c) { total += std::pow(std::abs(g(cell_center(c, eps))), p) * cell_area; });
    return std::pow(total, 1.0 / p);
}

}  // namespace

double lp_norm(const Field& g, const BitmapRegion& region, double p) {
    return lp_norm_impl(g, region, p, region.eps());
}

double lp_norm(const Field& g, const ComponentMask& mask, double p) {
    return lp_norm_impl(g, mask, p, mask.eps());
}

}  // namespace cdbs
