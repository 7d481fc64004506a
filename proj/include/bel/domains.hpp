#pragma once

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "bel/grid.hpp"
#include "bel/transforms.hpp"

namespace bel {

struct DiskDescriptor {
  cplx center;
  double radius;
};

struct RectangleDescriptor {
  cplx center;
  double half_width;
  double half_height;
};

// Square with its corners replaced by circular arcs of the given radius,
// a C^{1,1} boundary (the declared Holder exponent of the normal is 1).
struct SmoothedSquareDescriptor {
  cplx center;
  double half_side;
  double rounding;
};

using BoundaryDescriptor =
    std::variant<DiskDescriptor, RectangleDescriptor, SmoothedSquareDescriptor>;

// A discretized domain: characteristic samples of the descriptor plus the
// boundary cell ring. "Interior" means the signed distance is positive;
// "core" additionally keeps two cells away from the boundary, which is where
// every sup/Holder statistic lives.
class DomainMask {
 public:
  static DomainMask disk(const TorusGrid& g, cplx center, double radius);
  static DomainMask rectangle(const TorusGrid& g, cplx center,
                              double half_width, double half_height);
  static DomainMask smoothed_square(const TorusGrid& g, cplx center,
                                    double half_side, double rounding);
  static DomainMask from_descriptor(const TorusGrid& g,
                                    const BoundaryDescriptor& d);

  const TorusGrid& grid() const { return grid_; }
  const BoundaryDescriptor& descriptor() const { return descriptor_; }
  double diameter() const { return diameter_; }

  // > 0 inside the domain.
  double signed_distance(cplx z) const;

  bool inside(int a, int b) const {
    return chi_[static_cast<std::size_t>(a) * grid_.n + b] != 0;
  }
  bool core(int a, int b) const {
    return core_[static_cast<std::size_t>(a) * grid_.n + b] != 0;
  }
  const std::vector<std::uint8_t>& chi() const { return chi_; }
  const std::vector<std::uint8_t>& core_mask() const { return core_; }

  // Row-major indices of interior samples (deterministic order).
  const std::vector<std::size_t>& interior() const { return interior_; }
  const std::vector<std::size_t>& core_indices() const { return core_idx_; }

  // Arc-length boundary parametrization, t in [0, 1). Defined for the disk
  // and the smoothed square; the rectangle has no continuous normal.
  cplx boundary_point(double t) const;
  cplx boundary_normal(double t) const;

  bool is_rectangle() const {
    return std::holds_alternative<RectangleDescriptor>(descriptor_);
  }

  // True when every pairwise offset stays clear of the torus wrap, i.e. the
  // FFT evaluation of the restricted quadrature is exact.
  bool fits_central_region() const { return fits_central_; }

 private:
  DomainMask(const TorusGrid& g, BoundaryDescriptor d);

  TorusGrid grid_;
  BoundaryDescriptor descriptor_;
  double diameter_ = 0.0;
  bool fits_central_ = false;
  std::vector<std::uint8_t> chi_, core_;
  std::vector<std::size_t> interior_, core_idx_;
};

// Restricted quadrature T_Omega f(x) = sum_{y in Omega} K(x-y) f(y) h^2 with
// the singular cell contributing zero, evaluated at every interior sample
// (zero elsewhere). Rejects odd kernels and kernels without zero circle
// mean. Uses the circular-convolution evaluation when the domain fits the
// central region (identical values, much faster); otherwise the direct
// OpenMP sum.
Field apply_T_omega(const CZKernelSpec& kernel, const Field& f,
                    const DomainMask& omega);

// Direct-summation paths kept alongside the fast path: OpenMP and the serial
// reference used by tests and the kernel benchmark.
Field apply_T_omega_direct(const CZKernelSpec& kernel, const Field& f,
                           const DomainMask& omega);
Field apply_T_omega_serial(const CZKernelSpec& kernel, const Field& f,
                           const DomainMask& omega);

// Same quadrature evaluated at selected sample points only.
std::vector<cplx> t_omega_at(const CZKernelSpec& kernel, const Field& f,
                             const DomainMask& omega,
                             const std::vector<std::pair<int, int>>& points);

// T_Omega applied to the constant 1.
Field t_chi(const CZKernelSpec& kernel, const DomainMask& omega);

// The five-term split of T_Omega f(y) - T_Omega f(x): three local/far terms
// against f-differences, the bump-like term g4, and f(x) times the
// difference of T chi_Omega. Their sum reproduces the left-hand side to
// quadrature round-off.
struct MeyerTerms {
  cplx g1, g2, g3, g4, chi_term;
  cplx lhs;  // T_Omega f(y) - T_Omega f(x), same quadrature
  cplx sum() const { return g1 + g2 + g3 + g4 + chi_term; }
};

MeyerTerms meyer_decomposition(const CZKernelSpec& kernel, const Field& f,
                               const DomainMask& omega, std::pair<int, int> x,
                               std::pair<int, int> y);

// Smooth bump supported in B(center, radius) with sup <= 1 and
// |grad| <= 1/radius (quintic profile, amplitude 8/15 so the gradient bound
// is met exactly).
struct BallBump {
  cplx center;
  double radius;
  static constexpr double kAmplitude = 8.0 / 15.0;
  double value(cplx z) const;
};

Field sample_bump(const TorusGrid& g, const BallBump& bump);

struct BumpBoundResult {
  struct Entry {
    cplx center;
    double radius;
    double sup;  // sup over the domain core of |T_Omega phi_B|
  };
  std::vector<Entry> per_ball;
  std::vector<std::pair<double, double>> per_radius_sup;  // (radius, sup)
  double overall_sup = 0.0;
  double spearman_vs_inverse_radius = 0.0;
  bool upward_trend = false;  // spearman > 0.5
};

// sup_B ||T_Omega phi_B||_inf over a family of bumps. Rejects rectangle
// domains (the bound needs a continuously turning normal).
BumpBoundResult bump_bound(const CZKernelSpec& kernel, const DomainMask& omega,
                           const std::vector<BallBump>& bumps);

// [mu, B] f = mu * beurling(f) - beurling(mu * f), spectral.
Field commutator(const Field& mu, const Field& f);

// Discrete integral over a rectangle of |grad of the restricted Beurling
// transform of its characteristic function|^p, across grid resolutions,
// with divergence classified by the last refinement ratio.
struct CornerScanRow {
  double p;
  int n;
  double value;
};

struct CornerScanClassification {
  double p;
  double last_ratio;
  bool diverging;  // last_ratio > 1.1
};

struct CornerScanResult {
  std::vector<CornerScanRow> rows;
  std::vector<CornerScanClassification> classes;
};

CornerScanResult corner_scan(cplx center, double half_width,
                             double half_height, double side,
                             const std::vector<double>& p_list,
                             const std::vector<int>& n_list);

// Spearman rank correlation (helper shared with the acceptance suite).
double spearman(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace bel
