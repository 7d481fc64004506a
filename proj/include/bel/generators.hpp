#pragma once

#include <cstdint>
#include <random>

#include "bel/beltrami.hpp"
#include "bel/grid.hpp"

namespace bel {

// Compactly supported radial plateau: value k on |z - center| <= radius/2,
// a quintic descent to 0 at |z - center| = radius, optionally sharpened by
// an integer smoothness exponent applied to the profile.
Field plateau_bump(const TorusGrid& g, double k, cplx center, double radius,
                   int smoothness = 1);

// k on the disk |z - center| < radius, 0 outside.
Field disk_indicator(const TorusGrid& g, double k, cplx center, double radius);

// chi of the rectangle |x1 - c1| < hw, |x2 - c2| < hh.
Field rectangle_indicator(const TorusGrid& g, cplx center, double half_width,
                          double half_height);

// Gaussian exp(-|z - center|^2 / width^2) (not compactly supported; for
// norm-estimator tests only).
Field gaussian_bump(const TorusGrid& g, cplx center, double width);

// Complex field with independent Gaussian coefficients on the frequency
// bins |k1|, |k2| <= band, zero elsewhere (mean-zero when include_mean is
// false). Deterministic for a fixed seed.
Field random_band_limited(const TorusGrid& g, int band, std::uint64_t seed,
                          bool include_mean = false);

// Sum of a few random plateau bumps with sup norm scaled to k, supported in
// |z| <= g.side/4. Deterministic for a fixed seed.
Field random_smooth_bump_field(const TorusGrid& g, double k,
                               std::uint64_t seed);

BeltramiCoefficient disk_coefficient(const TorusGrid& g, double k,
                                     double radius = 1.0);
BeltramiCoefficient bump_coefficient(const TorusGrid& g, double k,
                                     double radius = 1.0, int smoothness = 1);

}  // namespace bel
