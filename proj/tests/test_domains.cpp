#include <doctest.h>

#include <cmath>
#include <random>

#include "bel/domains.hpp"
#include "bel/generators.hpp"
#include "bel/grid.hpp"
#include "bel/transforms.hpp"
#include "oracles.hpp"

using namespace bel;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("mask construction flags interior, ring and core") {
  const TorusGrid g = make_grid(128, 8.0);
  const DomainMask disk = DomainMask::disk(g, 0.0, 1.0);
  CHECK(disk.interior().size() > 0);
  CHECK(disk.core_indices().size() > 0);
  CHECK(disk.core_indices().size() < disk.interior().size());
  CHECK(disk.diameter() == doctest::Approx(2.0));
  CHECK(disk.fits_central_region());

  // chi is 1 exactly on the strictly interior sample set.
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b)
      CHECK(disk.inside(a, b) == (std::abs(g.point(a, b)) < 1.0));

  CHECK_THROWS_AS(DomainMask::disk(g, 0.0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(DomainMask::smoothed_square(g, 0.0, 1.0, 1.5),
                  std::invalid_argument);
}

TEST_CASE("smoothed square boundary has a Lipschitz normal") {
  const TorusGrid g = make_grid(128, 8.0);
  const DomainMask sq = DomainMask::smoothed_square(g, 0.0, 1.0, 0.2);
  // Holder-1 quotient of the normal along the boundary is bounded by the
  // curvature of the arcs, 1/rounding.
  const int samples = 400;
  double quot = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t1 = static_cast<double>(i) / samples;
    const double t2 = t1 + 0.003;
    const cplx dn = sq.boundary_normal(t1) - sq.boundary_normal(t2);
    const cplx dp = sq.boundary_point(t1) - sq.boundary_point(t2);
    if (std::abs(dp) == 0.0) continue;
    quot = std::max(quot, std::abs(dn) / std::abs(dp));
  }
  CHECK(quot <= 1.0 / 0.2 + 0.1);

  // Normals point outward: positive signed distance decrease.
  for (int i = 0; i < 40; ++i) {
    const double t = static_cast<double>(i) / 40.0;
    const cplx z = sq.boundary_point(t);
    const cplx nrm = sq.boundary_normal(t);
    CHECK(sq.signed_distance(z - 0.05 * nrm) > 0.0);
    CHECK(sq.signed_distance(z + 0.05 * nrm) < 0.0);
  }
}

TEST_CASE("restricted quadrature: fast, direct and serial paths agree") {
  const TorusGrid g = make_grid(64, 8.0);
  const DomainMask disk = DomainMask::disk(g, 0.0, 1.0);
  const Field f = sample(g, [](double x1, double x2) {
    return cplx(std::cos(x1), std::sin(x2));
  });
  const CZKernelSpec kernel = beurling_kernel();
  const Field fast = apply_T_omega(kernel, f, disk);
  const Field direct = apply_T_omega_direct(kernel, f, disk);
  const Field serial = apply_T_omega_serial(kernel, f, disk);
  double dmax = 0.0, smax = 0.0;
  for (std::size_t i = 0; i < fast.size(); ++i) {
    dmax = std::max(dmax, std::abs(fast[i] - direct[i]));
    smax = std::max(smax, std::abs(direct[i] - serial[i]));
  }
  CHECK(dmax < 1e-10);
  CHECK(smax == 0.0);  // same loop, same order
}

TEST_CASE("restricted quadrature rejects bad kernels and zero in, zero out") {
  const TorusGrid g = make_grid(64, 8.0);
  const DomainMask disk = DomainMask::disk(g, 0.0, 1.0);
  const CZKernelSpec odd("odd", [](double t) { return cplx(std::cos(t), 0.0); },
                         false);
  CHECK_THROWS_AS(apply_T_omega(odd, zeros(g), disk), std::invalid_argument);
  CHECK(lp_norm(apply_T_omega(beurling_kernel(), zeros(g), disk), 2.0) == 0.0);
}

TEST_CASE("even cancellation on the ball") {
  const TorusGrid g = make_grid(512, 8.0);
  const DomainMask disk = DomainMask::disk(g, 0.0, 1.0);
  const Field t = t_chi(beurling_kernel(), disk);
  double sup = 0.0;
  for (std::size_t i : disk.core_indices()) sup = std::max(sup, std::abs(t[i]));
  CHECK(sup <= 0.02);
}

TEST_CASE("exterior values of the restricted transform match the analytic transform") {
  const TorusGrid g = make_grid(256, 8.0);
  const DomainMask disk = DomainMask::disk(g, 0.0, 1.0);
  const Field ones = constant(g, 1.0);
  std::vector<std::pair<int, int>> probes;
  std::vector<cplx> want;
  for (int i = 0; i < 8; ++i) {
    const double theta = 2.0 * kPi * (i + 0.3) / 8.0;
    const double r = 1.5 + 0.5 * (i % 3) / 2.0;
    const int pa = static_cast<int>(
        std::lround((r * std::cos(theta) + 0.5 * g.side) / g.spacing()));
    const int pb = static_cast<int>(
        std::lround((r * std::sin(theta) + 0.5 * g.side) / g.spacing()));
    probes.push_back({pa, pb});
    want.push_back(oracle::beurling_chi_disk(g.point(pa, pb)));
  }
  const auto got = t_omega_at(beurling_kernel(), ones, disk, probes);
  for (std::size_t i = 0; i < got.size(); ++i)
    CHECK(std::abs(got[i] - want[i]) < 0.05);
}

TEST_CASE("rectangle transform matches its closed form and grows at corners") {
  const CZKernelSpec kernel = beurling_kernel();

  // Closed-form check at core points.
  {
    const TorusGrid g = make_grid(256, 8.0);
    const DomainMask q = DomainMask::rectangle(g, 0.0, 1.0, 1.0);
    const Field t = t_chi(kernel, q);
    double max_err = 0.0;
    for (std::size_t i : q.core_indices()) {
      const cplx z = g.point(static_cast<int>(i) / g.n,
                             static_cast<int>(i) % g.n);
      max_err = std::max(
          max_err,
          std::abs(t[i] - oracle::beurling_chi_rectangle(z, 0.0, 1.0, 1.0)));
    }
    CHECK(max_err < 0.05);
  }

  // Sup of |T chi_Q| and of its discrete gradient both grow with N: the
  // logarithmic corner singularities are resolved ever deeper.
  std::vector<double> sup_val, sup_grad;
  for (int n : {128, 256, 512}) {
    const TorusGrid g = make_grid(n, 8.0);
    const DomainMask q = DomainMask::rectangle(g, 0.0, 1.0, 1.0);
    const Field t = t_chi(kernel, q);
    double sv = 0.0, sg = 0.0;
    const double inv2h = 1.0 / (2.0 * g.spacing());
    for (std::size_t i : q.core_indices()) {
      const int a = static_cast<int>(i) / n;
      const int b = static_cast<int>(i) % n;
      sv = std::max(sv, std::abs(t[i]));
      const cplx dx = (t.at(a + 1, b) - t.at(a - 1, b)) * inv2h;
      const cplx dy = (t.at(a, b + 1) - t.at(a, b - 1)) * inv2h;
      sg = std::max(sg, std::sqrt(std::norm(dx) + std::norm(dy)));
    }
    sup_val.push_back(sv);
    sup_grad.push_back(sg);
  }
  CHECK(sup_val[1] > sup_val[0]);
  CHECK(sup_val[2] > sup_val[1]);
  // Log growth: roughly equal increments per doubling.
  const double inc1 = sup_val[1] - sup_val[0];
  const double inc2 = sup_val[2] - sup_val[1];
  CHECK(inc2 / inc1 > 0.5);
  CHECK(inc2 / inc1 < 1.6);
  CHECK(sup_grad[1] > 1.3 * sup_grad[0]);
  CHECK(sup_grad[2] > 1.3 * sup_grad[1]);
}

TEST_CASE("smoothed square transform has a stable Holder quotient") {
  const CZKernelSpec kernel = beurling_kernel();
  std::vector<double> quotients;
  for (int n : {128, 256}) {
    const TorusGrid g = make_grid(n, 8.0);
    const DomainMask sq = DomainMask::smoothed_square(g, 0.0, 1.0, 0.2);
    const Field t = t_chi(kernel, sq);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::size_t> pick(0, sq.core_indices().size() - 1);
    double q = 0.0;
    for (int k = 0; k < 4000; ++k) {
      const std::size_t i = sq.core_indices()[pick(rng)];
      const std::size_t j = sq.core_indices()[pick(rng)];
      if (i == j) continue;
      const cplx zi = g.point(static_cast<int>(i) / g.n, static_cast<int>(i) % g.n);
      const cplx zj = g.point(static_cast<int>(j) / g.n, static_cast<int>(j) % g.n);
      q = std::max(q, std::abs(t[i] - t[j]) / std::pow(std::abs(zi - zj), 0.4));
    }
    quotients.push_back(q);
  }
  CHECK(quotients[1] <= 1.3 * quotients[0]);
  CHECK(quotients[1] >= 0.7 * quotients[0]);
}

TEST_CASE("kernel reflection symmetry for even kernels") {
  const TorusGrid g = make_grid(64, 8.0);
  const DomainMask disk = DomainMask::disk(g, cplx(0.4, 0.2), 1.0);
  const Field f = sample(g, [](double x1, double x2) {
    return cplx(x1 * x1 - x2, x1 + 0.5 * x2);
  });
  const CZKernelSpec k = beurling_kernel();
  const CZKernelSpec k_reflected(
      "beurling-reflected", [](double t) { return -std::exp(cplx(0.0, -2.0 * (t + kPi))) / kPi; },
      true);
  const Field a = apply_T_omega_serial(k, f, disk);
  const Field b = apply_T_omega_serial(k_reflected, f, disk);
  double dmax = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    dmax = std::max(dmax, std::abs(a[i] - b[i]));
  CHECK(dmax < 1e-12);
}

TEST_CASE("restricted quadrature agrees with the spectral transform inside") {
  const TorusGrid g = make_grid(512, 8.0);
  const DomainMask omega = DomainMask::disk(g, 0.0, 1.8);
  const Field f = plateau_bump(g, 1.0, 0.0, 1.0, 1);
  const Field quad = apply_T_omega(beurling_kernel(), f, omega);
  const Field spec = beurling(f);
  double max_err = 0.0;
  for (std::size_t i : omega.core_indices())
    max_err = std::max(max_err, std::abs(quad[i] - spec[i]));
  CHECK(max_err < 0.05);
}

TEST_CASE("meyer decomposition reconstructs differences") {
  const TorusGrid g = make_grid(128, 8.0);
  const DomainMask disk = DomainMask::disk(g, 0.0, 1.0);
  const Field f = random_smooth_bump_field(g, 0.9, 11);
  const double fsup = lp_norm(f, std::numeric_limits<double>::infinity());
  const CZKernelSpec kernel = beurling_kernel();

  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> pick(0, disk.core_indices().size() - 1);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t i = disk.core_indices()[pick(rng)];
    std::size_t j = disk.core_indices()[pick(rng)];
    if (i == j) continue;
    const std::pair<int, int> x{static_cast<int>(i) / g.n,
                                static_cast<int>(i) % g.n};
    const std::pair<int, int> y{static_cast<int>(j) / g.n,
                                static_cast<int>(j) % g.n};
    const MeyerTerms terms = meyer_decomposition(kernel, f, disk, x, y);
    CHECK(std::abs(terms.sum() - terms.lhs) <= 1e-6 * fsup);
  }

  CHECK_THROWS_AS(
      meyer_decomposition(kernel, f, disk, {g.n / 2, g.n / 2}, {g.n / 2, g.n / 2}),
      std::invalid_argument);
}

TEST_CASE("meyer decomposition on constants keeps only the chi term") {
  const TorusGrid g = make_grid(128, 8.0);
  const DomainMask disk = DomainMask::disk(g, 0.0, 1.0);
  const Field c = constant(g, cplx(0.7, -0.2));
  const MeyerTerms t = meyer_decomposition(beurling_kernel(), c, disk,
                                           {g.n / 2 + 3, g.n / 2},
                                           {g.n / 2 - 5, g.n / 2 + 4});
  CHECK(std::abs(t.g1) < 1e-14);
  CHECK(std::abs(t.g2) < 1e-14);
  CHECK(std::abs(t.g3) < 1e-14);
  CHECK(std::abs(t.g4) < 1e-14);
  CHECK(std::abs(t.chi_term - t.lhs) < 1e-12);
}

TEST_CASE("g4 is controlled by the function difference") {
  const TorusGrid g = make_grid(128, 8.0);
  const DomainMask disk = DomainMask::disk(g, 0.0, 1.0);
  const Field f = random_smooth_bump_field(g, 0.9, 13);
  const CZKernelSpec kernel = beurling_kernel();
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::size_t> pick(0, disk.core_indices().size() - 1);
  int tested = 0;
  double max_factor = 0.0;
  while (tested < 20) {
    const std::size_t i = disk.core_indices()[pick(rng)];
    const std::size_t j = disk.core_indices()[pick(rng)];
    if (i == j) continue;
    const std::pair<int, int> x{static_cast<int>(i) / g.n,
                                static_cast<int>(i) % g.n};
    const std::pair<int, int> y{static_cast<int>(j) / g.n,
                                static_cast<int>(j) % g.n};
    const MeyerTerms t = meyer_decomposition(kernel, f, disk, x, y);
    const double df = std::abs(f[j] - f[i]);
    if (df < 1e-12) continue;
    max_factor = std::max(max_factor, std::abs(t.g4) / df);
    ++tested;
  }
  // The cutoff bump is a rescaled ball bump; its restricted transform stays
  // uniformly bounded. Constant measured, not asserted tight.
  CHECK(max_factor <= 6.0);
}

TEST_CASE("bump bound on the disk: no upward trend as radii shrink") {
  const TorusGrid g = make_grid(512, 4.0);
  const DomainMask disk = DomainMask::disk(g, 0.0, 1.0);
  std::vector<BallBump> bumps;
  for (double r : {0.4, 0.2, 0.1}) {
    bumps.push_back({0.0, r});
    bumps.push_back({cplx(1.0 - 1.5 * r, 0.0), r});  // near the boundary
  }
  const BumpBoundResult res = bump_bound(beurling_kernel(), disk, bumps);
  CHECK(res.per_radius_sup.size() == 3);
  CHECK_FALSE(res.upward_trend);
  CHECK(res.overall_sup > 0.0);

  CHECK_THROWS_AS(
      bump_bound(beurling_kernel(),
                 DomainMask::rectangle(g, 0.0, 0.8, 0.8), bumps),
      std::invalid_argument);
}

TEST_CASE("far-from-boundary bumps have radius-independent transforms") {
  const TorusGrid g = make_grid(512, 4.0);
  const DomainMask disk = DomainMask::disk(g, 0.0, 1.0);
  std::vector<double> sups;
  for (double r : {0.2, 0.1, 0.05}) {
    const BumpBoundResult res =
        bump_bound(beurling_kernel(), disk, {{0.0, r}});
    sups.push_back(res.overall_sup);
  }
  const double lo = *std::min_element(sups.begin(), sups.end());
  const double hi = *std::max_element(sups.begin(), sups.end());
  CHECK(hi / lo <= 3.0);
}

TEST_CASE("commutator basics") {
  const TorusGrid g = make_grid(128, 8.0);
  const Field f = random_band_limited(g, 30, 19, true);

  const Field c = commutator(constant(g, cplx(0.3, 0.4)), f);
  CHECK(lp_norm(c, std::numeric_limits<double>::infinity()) <=
        1e-12 * lp_norm(f, std::numeric_limits<double>::infinity()));

  const Field mu = plateau_bump(g, 0.5, 0.0, 1.0, 1);
  const Field direct = pointwise_mul(mu, beurling(f)) - beurling(pointwise_mul(mu, f));
  const Field viaop = commutator(mu, f);
  CHECK(lp_norm(direct - viaop, 2.0) == 0.0);
}

TEST_CASE("commutator with the disk indicator is log-Lipschitz with stable constant") {
  auto fitted = [](int n) {
    const TorusGrid g = make_grid(n, 8.0);
    const Field mu = plateau_bump(g, 0.5, 0.0, 1.0, 1);
    const Field chi = disk_indicator(g, 1.0, 0.0, 1.0);
    const Field v = commutator(mu, chi);
    const double d = 2.0;  // diameter of the disk
    double c = 0.0;
    // Nested pairs snapped to the coarsest grid so every N sees the same
    // physical points.
    const int coarse = 64;
    const int stride = n / coarse;
    for (int i = 0; i < 40; ++i) {
      std::mt19937_64 rng(100 + i);
      std::uniform_int_distribution<int> pick(0, coarse - 1);
      const int a1 = pick(rng) * stride, b1 = pick(rng) * stride;
      const int a2 = pick(rng) * stride, b2 = pick(rng) * stride;
      const cplx z1 = g.point(a1, b1), z2 = g.point(a2, b2);
      if (std::abs(std::abs(z1) - 1.0) < 0.1) continue;
      if (std::abs(std::abs(z2) - 1.0) < 0.1) continue;
      if (std::abs(z1) > 1.8 || std::abs(z2) > 1.8) continue;
      const double dist = std::abs(z1 - z2);
      if (dist < 1e-9) continue;
      const double modulus = dist * (1.0 + std::log(std::max(d / dist, 1.0)));
      c = std::max(c, std::abs(v.at(a1, b1) - v.at(a2, b2)) / modulus);
    }
    return c;
  };
  const double c128 = fitted(128);
  const double c256 = fitted(256);
  CHECK(c256 / c128 <= 1.2);
  CHECK(c128 / c256 <= 1.2);
}

TEST_CASE("corner scan classifies integrability of the rectangle gradient") {
  const CornerScanResult res =
      corner_scan(0.0, 1.0, 1.0, 8.0, {1.5, 2.0, 2.5}, {128, 256, 512});
  REQUIRE(res.classes.size() == 3);
  CHECK_FALSE(res.classes[0].diverging);  // p = 1.5
  CHECK(res.classes[1].diverging);        // p = 2
  CHECK(res.classes[2].diverging);        // p = 2.5
  CHECK(res.classes[2].last_ratio > res.classes[1].last_ratio);
  CHECK_THROWS_AS(corner_scan(0.0, 1.0, 1.0, 8.0, {}, {128}),
                  std::invalid_argument);
  CHECK_THROWS_AS(corner_scan(0.0, 1.0, 1.0, 8.0, {3.5}, {128}),
                  std::invalid_argument);
}
