#include "bel/generators.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "bel/parallel.hpp"
#include "bel/transforms.hpp"

namespace bel {

Field plateau_bump(const TorusGrid& g, double k, cplx center, double radius,
                   int smoothness) {
  if (!(radius > 0)) throw std::invalid_argument("bump radius must be positive");
  if (smoothness < 1) throw std::invalid_argument("bump smoothness must be >= 1");
  return sample(g, [=](double x1, double x2) -> cplx {
    const double r = std::abs(cplx(x1, x2) - center);
    if (r >= radius) return 0.0;
    const double t = 1.0 - smoothstep((r - 0.5 * radius) / (0.5 * radius));
    return k * std::pow(t, smoothness);
  });
}

Field disk_indicator(const TorusGrid& g, double k, cplx center, double radius) {
  return sample(g, [=](double x1, double x2) -> cplx {
    return std::abs(cplx(x1, x2) - center) < radius ? k : 0.0;
  });
}

Field rectangle_indicator(const TorusGrid& g, cplx center, double half_width,
                          double half_height) {
  return sample(g, [=](double x1, double x2) -> cplx {
    return (std::abs(x1 - center.real()) < half_width &&
            std::abs(x2 - center.imag()) < half_height)
               ? 1.0
               : 0.0;
  });
}

Field gaussian_bump(const TorusGrid& g, cplx center, double width) {
  return sample(g, [=](double x1, double x2) -> cplx {
    const double r2 = std::norm(cplx(x1, x2) - center);
    return std::exp(-r2 / (width * width));
  });
}

Field random_band_limited(const TorusGrid& g, int band, std::uint64_t seed,
                          bool include_mean) {
  if (band < 1 || band >= g.n / 2)
    throw std::invalid_argument("band must lie in [1, N/2)");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Field hat(g);
  for (int j1 = 0; j1 < g.n; ++j1) {
    const int k1 = g.wavenumber(j1);
    if (std::abs(k1) > band) continue;
    for (int j2 = 0; j2 < g.n; ++j2) {
      const int k2 = g.wavenumber(j2);
      if (std::abs(k2) > band) continue;
      if (!include_mean && k1 == 0 && k2 == 0) continue;
      hat.at(j1, j2) = cplx(gauss(rng), gauss(rng)) * (g.side * g.side);
    }
  }
  return idft(hat);
}

Field random_smooth_bump_field(const TorusGrid& g, double k,
                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const double reach = 0.125 * g.side;
  Field total = zeros(g);
  const int parts = 3;
  for (int i = 0; i < parts; ++i) {
    const cplx center(reach * uni(rng), reach * uni(rng));
    const double radius = 0.05 * g.side * (1.5 + uni(rng) * 0.5);
    const double amp = 0.5 + 0.5 * std::abs(uni(rng));
    total = total + plateau_bump(g, amp, center, radius, 1);
  }
  double sup = lp_norm(total, std::numeric_limits<double>::infinity());
  if (sup == 0.0) return total;
  return cplx(k / sup, 0.0) * total;
}

BeltramiCoefficient disk_coefficient(const TorusGrid& g, double k,
                                     double radius) {
  return BeltramiCoefficient::make(disk_indicator(g, k, 0.0, radius));
}

BeltramiCoefficient bump_coefficient(const TorusGrid& g, double k,
                                     double radius, int smoothness) {
  return BeltramiCoefficient::make(
      plateau_bump(g, k, 0.0, radius, smoothness));
}

}  // namespace bel
