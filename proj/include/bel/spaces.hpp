#pragma once

#include <cstdint>
#include <vector>

#include "bel/domains.hpp"
#include "bel/grid.hpp"

namespace bel {

enum class SpaceFamily { Besov, TriebelLizorkin, Sobolev, Lorentz, RieszPotential };

struct SpaceParams {
  SpaceFamily family = SpaceFamily::Besov;
  double s = 0.0;
  double p = 2.0;
  double q = 2.0;
  // The multiplication-algebra and sup-embedding regime.
  bool algebra_regime() const { return s * p > 2.0; }
};

// Dyadic resolution of unity on the grid frequencies: a radial low-pass
// psi0 equal to 1 on |xi| <= 1 and 0 on |xi| >= 3/2 (quintic profile in
// between), and annulus blocks psi_j(xi) = psi0(2^-j xi) - psi0(2^-j+1 xi)
// for 1 <= j <= J. The blocks sum to 1 on every bin with |xi| <= 2^J.
class DyadicFilterBank {
 public:
  explicit DyadicFilterBank(const TorusGrid& g);

  const TorusGrid& grid() const { return grid_; }
  int top_level() const { return top_level_; }

  // psi_j evaluated at radius rho = |xi|.
  double symbol(int j, double rho) const;

  // Spectral application of block j.
  Field block(const Field& f, int j) const;

  // max over bins with |xi| <= 2^J of |sum_j psi_j - 1|.
  double partition_defect() const;

 private:
  TorusGrid grid_;
  int top_level_;
};

// Finite-level truncations of the filter-bank norms. Valid for s > 0,
// p, q >= 1 (q may be infinite for none of these; Lorentz handles q = inf).
double besov_norm(const Field& f, double s, double p, double q);
double triebel_norm(const Field& f, double s, double p, double q);

struct DomainNormOptions {
  std::size_t max_source_points = 4096;
  std::uint64_t seed = 0;
};

struct DomainNormResult {
  double value = 0.0;
  double pair_cutoff = 0.0;    // pairs with |x-y| below this were excluded
  double estimator_std = 0.0;  // 0 when the full double sum was used
  bool subsampled = false;
};

// Intrinsic domain norms by double sums over interior sample pairs with the
// diagonal shell |x-y| < h excluded. Sources are stratified-subsampled above
// max_source_points; the estimator spread is reported.
DomainNormResult besov_domain_norm(const Field& f, const DomainMask& omega,
                                   double s, double p,
                                   const DomainNormOptions& opt = {});
DomainNormResult sobolev_domain_norm(const Field& f, const DomainMask& omega,
                                     double s, double p,
                                     const DomainNormOptions& opt = {});

struct W1pScanEntry {
  double alpha;
  double scaled_integral;  // alpha * double integral
};

struct W1pScanResult {
  std::vector<W1pScanEntry> entries;
  bool stabilized = false;  // last two entries differ by < 10%
};

// The alpha -> 0 scan characterizing W^{1,p}: alpha times the double
// integral with exponent 2 + p - alpha, for a decreasing list of alphas in
// (0, 1/2].
W1pScanResult w1p_domain_scan(const Field& f, const DomainMask& omega, double p,
                              const std::vector<double>& alphas,
                              const DomainNormOptions& opt = {});

// Lorentz norm via the nonincreasing rearrangement: the step function with
// steps of width cell_area, integrated in closed form per step.
double lorentz_norm(const Field& f, double p, double q);
double lorentz_norm(std::vector<double> abs_values, double cell_area, double p,
                    double q);

// |grad f| = sqrt(2) * (|d f|^2 + |d_bar f|^2)^(1/2), which reproduces the
// Euclidean gradient magnitude for real f. Stored as a real-valued Field.
Field gradient_magnitude(const Field& f);

// Norm of the Riesz potential space: for alpha = 1 the Lorentz (2,1) norm of
// |grad f|; for general alpha the Lorentz (2/alpha, 1) norm of the inverse
// Riesz potential of f (f must be mean-zero for that path).
double riesz_potential_space_norm(const Field& f, double alpha);

}  // namespace bel
