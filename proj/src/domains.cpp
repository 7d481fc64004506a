#include "bel/domains.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "bel/parallel.hpp"

namespace bel {

namespace {

constexpr double kPi = 3.14159265358979323846;

double rounded_box_sdf(cplx p, double half, double rounding) {
  // Negative inside; classic rounded-box distance.
  const double qx = std::abs(p.real()) - (half - rounding);
  const double qy = std::abs(p.imag()) - (half - rounding);
  const double ox = std::max(qx, 0.0);
  const double oy = std::max(qy, 0.0);
  return std::sqrt(ox * ox + oy * oy) + std::min(std::max(qx, qy), 0.0) -
         rounding;
}

struct SdfVisitor {
  cplx z;
  double operator()(const DiskDescriptor& d) const {
    return d.radius - std::abs(z - d.center);
  }
  double operator()(const RectangleDescriptor& r) const {
    const cplx p = z - r.center;
    const double qx = std::abs(p.real()) - r.half_width;
    const double qy = std::abs(p.imag()) - r.half_height;
    const double ox = std::max(qx, 0.0);
    const double oy = std::max(qy, 0.0);
    return -(std::sqrt(ox * ox + oy * oy) + std::min(std::max(qx, qy), 0.0));
  }
  double operator()(const SmoothedSquareDescriptor& s) const {
    return -rounded_box_sdf(z - s.center, s.half_side, s.rounding);
  }
};

double descriptor_diameter(const BoundaryDescriptor& d) {
  if (const auto* disk = std::get_if<DiskDescriptor>(&d))
    return 2.0 * disk->radius;
  if (const auto* rect = std::get_if<RectangleDescriptor>(&d))
    return 2.0 * std::hypot(rect->half_width, rect->half_height);
  const auto& sq = std::get<SmoothedSquareDescriptor>(d);
  const double a = sq.half_side - sq.rounding;
  return 2.0 * (std::sqrt(2.0) * a + sq.rounding);
}

void check_kernel(const CZKernelSpec& kernel) {
  if (!kernel.even())
    throw std::invalid_argument("restricted operators require an even kernel");
  if (kernel.circle_mean_abs() > 1e-10)
    throw std::invalid_argument("kernel circle mean must vanish");
}

}  // namespace

DomainMask::DomainMask(const TorusGrid& g, BoundaryDescriptor d)
    : grid_(g), descriptor_(std::move(d)) {
  diameter_ = descriptor_diameter(descriptor_);
  const int n = g.n;
  chi_.assign(static_cast<std::size_t>(n) * n, 0);
  core_.assign(static_cast<std::size_t>(n) * n, 0);
  const double ring = 2.0 * g.spacing();
  double lo1 = 1e300, hi1 = -1e300, lo2 = 1e300, hi2 = -1e300;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const cplx z = g.point(a, b);
      const double sd = signed_distance(z);
      if (sd > 0.0) {
        const std::size_t i = static_cast<std::size_t>(a) * n + b;
        chi_[i] = 1;
        interior_.push_back(i);
        lo1 = std::min(lo1, z.real());
        hi1 = std::max(hi1, z.real());
        lo2 = std::min(lo2, z.imag());
        hi2 = std::max(hi2, z.imag());
        if (sd > ring) {
          core_[i] = 1;
          core_idx_.push_back(i);
        }
      }
    }
  if (interior_.empty())
    throw std::invalid_argument("domain has no interior samples");
  fits_central_ = (hi1 - lo1) <= 0.5 * g.side - g.spacing() &&
                  (hi2 - lo2) <= 0.5 * g.side - g.spacing();
}

DomainMask DomainMask::disk(const TorusGrid& g, cplx center, double radius) {
  if (!(radius > 0)) throw std::invalid_argument("disk radius must be positive");
  return DomainMask(g, DiskDescriptor{center, radius});
}

DomainMask DomainMask::rectangle(const TorusGrid& g, cplx center,
                                 double half_width, double half_height) {
  if (!(half_width > 0) || !(half_height > 0))
    throw std::invalid_argument("rectangle half sizes must be positive");
  return DomainMask(g, RectangleDescriptor{center, half_width, half_height});
}

DomainMask DomainMask::smoothed_square(const TorusGrid& g, cplx center,
                                       double half_side, double rounding) {
  if (!(half_side > 0) || !(rounding > 0) || rounding >= half_side)
    throw std::invalid_argument("smoothed square needs 0 < rounding < half side");
  return DomainMask(g, SmoothedSquareDescriptor{center, half_side, rounding});
}

DomainMask DomainMask::from_descriptor(const TorusGrid& g,
                                       const BoundaryDescriptor& d) {
  return DomainMask(g, d);
}

double DomainMask::signed_distance(cplx z) const {
  return std::visit(SdfVisitor{z}, descriptor_);
}

cplx DomainMask::boundary_point(double t) const {
  t -= std::floor(t);
  if (const auto* disk = std::get_if<DiskDescriptor>(&descriptor_)) {
    return disk->center + disk->radius * std::exp(cplx(0.0, 2.0 * kPi * t));
  }
  const auto* sq = std::get_if<SmoothedSquareDescriptor>(&descriptor_);
  if (!sq)
    throw std::invalid_argument("rectangle boundary has no smooth parametrization");
  const double a = sq->half_side - sq->rounding;
  const double rho = sq->rounding;
  const double straight = 2.0 * a;
  const double arc = 0.5 * kPi * rho;
  const double perim = 4.0 * (straight + arc);
  double ell = t * perim;
  // Pieces, counterclockwise from the bottom of the right edge: 4 x
  // (edge, corner arc).
  struct Piece {
    cplx start, dir;     // straight part
    cplx arc_center;     // following corner
    double arc_theta0;
  };
  const Piece pieces[4] = {
      {{sq->half_side, -a}, {0, 1}, {a, a}, 0.0},
      {{a, sq->half_side}, {-1, 0}, {-a, a}, 0.5 * kPi},
      {{-sq->half_side, a}, {0, -1}, {-a, -a}, kPi},
      {{-a, -sq->half_side}, {1, 0}, {a, -a}, 1.5 * kPi}};
  for (const Piece& p : pieces) {
    if (ell <= straight) return sq->center + p.start + ell * p.dir;
    ell -= straight;
    if (ell <= arc) {
      const double theta = p.arc_theta0 + ell / rho;
      return sq->center + p.arc_center + rho * std::exp(cplx(0.0, theta));
    }
    ell -= arc;
  }
  return sq->center + cplx(sq->half_side, -a);  // t ~ 1 wrap
}

cplx DomainMask::boundary_normal(double t) const {
  t -= std::floor(t);
  if (std::holds_alternative<DiskDescriptor>(descriptor_))
    return std::exp(cplx(0.0, 2.0 * kPi * t));
  const auto* sq = std::get_if<SmoothedSquareDescriptor>(&descriptor_);
  if (!sq)
    throw std::invalid_argument("rectangle boundary has no continuous normal");
  const double a = sq->half_side - sq->rounding;
  const double rho = sq->rounding;
  const double straight = 2.0 * a;
  const double arc = 0.5 * kPi * rho;
  const double perim = 4.0 * (straight + arc);
  double ell = t * perim;
  const cplx edge_normals[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (int i = 0; i < 4; ++i) {
    if (ell <= straight) return edge_normals[i];
    ell -= straight;
    if (ell <= arc) {
      const double theta = 0.5 * kPi * i + ell / rho;
      return std::exp(cplx(0.0, theta));
    }
    ell -= arc;
  }
  return edge_normals[0];
}

namespace {

Field t_omega_direct_impl(const CZKernelSpec& kernel, const Field& f,
                          const DomainMask& om, bool threaded) {
  const TorusGrid& g = f.grid();
  const double h2 = g.cell_area();
  const auto& interior = om.interior();
  const int n = g.n;
  Field out(g);
  auto eval_at = [&](std::size_t oi) {
    const int xa = static_cast<int>(interior[oi]) / n;
    const int xb = static_cast<int>(interior[oi]) % n;
    const cplx x = g.point(xa, xb);
    cplx acc = 0.0;
    for (std::size_t yi : interior) {
      const int ya = static_cast<int>(yi) / n;
      const int yb = static_cast<int>(yi) % n;
      acc += kernel.eval(x - g.point(ya, yb)) * f[yi];
    }
    out[interior[oi]] = acc * h2;
  };
  if (threaded) {
    parallel_for(interior.size(), eval_at);
  } else {
    for (std::size_t i = 0; i < interior.size(); ++i) eval_at(i);
  }
  return out;
}

}  // namespace

Field apply_T_omega(const CZKernelSpec& kernel, const Field& f,
                    const DomainMask& om) {
  check_kernel(kernel);
  if (!(f.grid() == om.grid()))
    throw std::invalid_argument("field and domain grids differ");
  if (!om.fits_central_region()) return t_omega_direct_impl(kernel, f, om, true);
  const TorusGrid& g = f.grid();
  Field masked(g);
  const auto& chi = om.chi();
  parallel_for(f.size(), [&](std::size_t i) {
    masked[i] = chi[i] ? f[i] : cplx(0.0);
  });
  Field conv = convolve_sampled_kernel(sample_kernel(g, kernel), masked);
  Field out(g);
  for (std::size_t i : om.interior()) out[i] = conv[i];
  return out;
}

Field apply_T_omega_direct(const CZKernelSpec& kernel, const Field& f,
                           const DomainMask& om) {
  check_kernel(kernel);
  return t_omega_direct_impl(kernel, f, om, true);
}

Field apply_T_omega_serial(const CZKernelSpec& kernel, const Field& f,
                           const DomainMask& om) {
  check_kernel(kernel);
  return t_omega_direct_impl(kernel, f, om, false);
}

std::vector<cplx> t_omega_at(const CZKernelSpec& kernel, const Field& f,
                             const DomainMask& om,
                             const std::vector<std::pair<int, int>>& points) {
  check_kernel(kernel);
  const TorusGrid& g = f.grid();
  const double h2 = g.cell_area();
  const int n = g.n;
  std::vector<cplx> out(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    const cplx x = g.point(points[i].first, points[i].second);
    cplx acc = 0.0;
    for (std::size_t yi : om.interior()) {
      const int ya = static_cast<int>(yi) / n;
      const int yb = static_cast<int>(yi) % n;
      acc += kernel.eval(x - g.point(ya, yb)) * f[yi];
    }
    out[i] = acc * h2;
  });
  return out;
}

Field t_chi(const CZKernelSpec& kernel, const DomainMask& om) {
  return apply_T_omega(kernel, constant(om.grid(), 1.0), om);
}

MeyerTerms meyer_decomposition(const CZKernelSpec& kernel, const Field& f,
                               const DomainMask& om, std::pair<int, int> xi,
                               std::pair<int, int> yi) {
  check_kernel(kernel);
  if (xi == yi) throw std::invalid_argument("decomposition needs x != y");
  const TorusGrid& g = f.grid();
  if (!om.inside(xi.first, xi.second) || !om.inside(yi.first, yi.second))
    throw std::invalid_argument("decomposition points must be interior");
  const cplx x = g.point(xi.first, xi.second);
  const cplx y = g.point(yi.first, yi.second);
  const cplx fx = f.at(xi.first, xi.second);
  const cplx fy = f.at(yi.first, yi.second);
  const double delta = std::abs(y - x);
  const double h2 = g.cell_area();
  const int n = g.n;

  auto psi = [](double t) { return 1.0 - smoothstep(0.5 * (t - 2.0)); };

  cplx g1 = 0, g2 = 0, g3 = 0, g4 = 0, tchix = 0, tchiy = 0, tfx = 0, tfy = 0;
  for (std::size_t ui : om.interior()) {
    const int ua = static_cast<int>(ui) / n;
    const int ub = static_cast<int>(ui) % n;
    const cplx u = g.point(ua, ub);
    const cplx fu = f[ui];
    const cplx kxu = kernel.eval(x - u);
    const cplx kyu = kernel.eval(y - u);
    const double p = psi(std::abs(u - x) / delta);
    g1 += (kyu - kxu) * (fu - fx) * (1.0 - p);
    g2 -= kxu * (fu - fx) * p;
    g3 += kyu * (fu - fy) * p;
    g4 += kyu * p;
    tchix += kxu;
    tchiy += kyu;
    tfx += kxu * fu;
    tfy += kyu * fu;
  }
  MeyerTerms out;
  out.g1 = g1 * h2;
  out.g2 = g2 * h2;
  out.g3 = g3 * h2;
  out.g4 = (fy - fx) * g4 * h2;
  out.chi_term = fx * (tchiy - tchix) * h2;
  out.lhs = (tfy - tfx) * h2;
  return out;
}

double BallBump::value(cplx z) const {
  const double r = std::abs(z - center);
  if (r >= radius) return 0.0;
  return kAmplitude * (1.0 - smoothstep(r / radius));
}

Field sample_bump(const TorusGrid& g, const BallBump& bump) {
  return sample(g, [&bump](double x1, double x2) {
    return cplx(bump.value({x1, x2}), 0.0);
  });
}

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = a.size();
  if (n != b.size() || n < 2)
    throw std::invalid_argument("spearman needs two equal series, length >= 2");
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return v[i] < v[j]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < order.size(); ++i)
      r[order[i]] = static_cast<double>(i);
    return r;
  };
  const std::vector<double> ra = ranks(a), rb = ranks(b);
  const double mean = 0.5 * (n - 1);
  double num = 0, da = 0, db = 0;
  for (std::size_t i = 0; i < n; ++i) {
    num += (ra[i] - mean) * (rb[i] - mean);
    da += (ra[i] - mean) * (ra[i] - mean);
    db += (rb[i] - mean) * (rb[i] - mean);
  }
  if (da == 0.0 || db == 0.0) return 0.0;
  return num / std::sqrt(da * db);
}

BumpBoundResult bump_bound(const CZKernelSpec& kernel, const DomainMask& om,
                           const std::vector<BallBump>& bumps) {
  check_kernel(kernel);
  if (om.is_rectangle())
    throw std::invalid_argument(
        "bump bound requires a domain with a continuously turning normal");
  BumpBoundResult out;
  for (const BallBump& bump : bumps) {
    const Field fb = sample_bump(om.grid(), bump);
    const Field t = apply_T_omega(kernel, fb, om);
    double sup = 0.0;
    for (std::size_t i : om.core_indices()) sup = std::max(sup, std::abs(t[i]));
    out.per_ball.push_back({bump.center, bump.radius, sup});
    out.overall_sup = std::max(out.overall_sup, sup);
  }
  // Per-radius sup across centers, radii in decreasing order.
  std::vector<double> radii;
  for (const auto& e : out.per_ball) {
    bool found = false;
    for (double r : radii)
      if (std::abs(r - e.radius) < 1e-12) found = true;
    if (!found) radii.push_back(e.radius);
  }
  std::sort(radii.rbegin(), radii.rend());
  for (double r : radii) {
    double sup = 0.0;
    for (const auto& e : out.per_ball)
      if (std::abs(e.radius - r) < 1e-12) sup = std::max(sup, e.sup);
    out.per_radius_sup.push_back({r, sup});
  }
  if (out.per_radius_sup.size() >= 2) {
    std::vector<double> inv_r, sups;
    for (auto& [r, s] : out.per_radius_sup) {
      inv_r.push_back(1.0 / r);
      sups.push_back(s);
    }
    out.spearman_vs_inverse_radius = spearman(inv_r, sups);
    out.upward_trend = out.spearman_vs_inverse_radius > 0.5;
  }
  return out;
}

Field commutator(const Field& mu, const Field& f) {
  return pointwise_mul(mu, beurling(f)) - beurling(pointwise_mul(mu, f));
}

CornerScanResult corner_scan(cplx center, double half_width,
                             double half_height, double side,
                             const std::vector<double>& p_list,
                             const std::vector<int>& n_list) {
  if (p_list.empty() || n_list.empty())
    throw std::invalid_argument("corner scan needs nonempty p and N lists");
  for (double p : p_list)
    if (!(p > 1.0) || !(p < 3.0))
      throw std::invalid_argument("corner scan expects p in (1, 3)");
  CornerScanResult out;
  const CZKernelSpec kernel = beurling_kernel();
  for (int n : n_list) {
    const TorusGrid g = TorusGrid::make(n, side);
    const DomainMask q =
        DomainMask::rectangle(g, center, half_width, half_height);
    const Field v = t_chi(kernel, q);
    const double inv2h = 1.0 / (2.0 * g.spacing());
    const double h2 = g.cell_area();
    // |grad|^2 by central differences at core samples; neighbours are
    // interior so the quadrature values exist.
    std::vector<double> grad2(q.core_indices().size());
    parallel_for(q.core_indices().size(), [&](std::size_t i) {
      const std::size_t idx = q.core_indices()[i];
      const int a = static_cast<int>(idx) / n;
      const int b = static_cast<int>(idx) % n;
      const cplx dx = (v.at(a + 1, b) - v.at(a - 1, b)) * inv2h;
      const cplx dy = (v.at(a, b + 1) - v.at(a, b - 1)) * inv2h;
      grad2[i] = std::norm(dx) + std::norm(dy);
    });
    for (double p : p_list) {
      const double sum = chunked_sum<double>(grad2.size(), [&](std::size_t i) {
        return std::pow(grad2[i], 0.5 * p);
      });
      out.rows.push_back({p, n, sum * h2});
    }
  }
  for (double p : p_list) {
    std::vector<double> vals;
    for (const auto& r : out.rows)
      if (r.p == p) vals.push_back(r.value);
    CornerScanClassification c{p, 0.0, false};
    if (vals.size() >= 2) {
      c.last_ratio = vals.back() / vals[vals.size() - 2];
      c.diverging = c.last_ratio > 1.1;
    }
    out.classes.push_back(c);
  }
  return out;
}

}  // namespace bel
