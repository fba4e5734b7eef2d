#pragma once

#include "cdbs/diversify.hpp"
#include "cdbs/quasi.hpp"

namespace cdbs {

/// L^p norm of g over the rasterized domain by composite midpoint
/// quadrature on the eps-raster (O(eps) bias for p < infinity); the max
/// over cell centers for p = infinity. Throws on an empty region.
double lp_norm(const Field& g, const BitmapRegion& region, double p);

/// Same over a single component mask.
double lp_norm(const Field& g, const ComponentMask& mask, double p);

}  // namespace cdbs
