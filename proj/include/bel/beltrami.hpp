#pragma once

#include <cstdint>
#include <vector>

#include "bel/grid.hpp"

namespace bel {

// A coefficient field with sup norm k < 1 and compact support well inside
// the torus (support radius <= L/4). Both invariants are checked at
// construction; violations are errors, never clamped away.
struct BeltramiCoefficient {
  Field field;
  double k = 0.0;            // recorded sup norm
  double support_radius = 0.0;

  static BeltramiCoefficient make(Field f);
};

// Principal-solution data: phi(z) = z + displacement with displacement
// = cauchy(h), d(phi) = 1 + beurling(h) and d_bar(phi) = h on the grid.
struct PrincipalSolution {
  BeltramiCoefficient mu;
  Field h;
  Field displacement;
  int iterations = 0;
  bool converged = false;
  std::vector<double> residual_history;  // relative l2 residuals per step
};

struct SolveOptions {
  double tol = 1e-10;
  int max_iter = 0;  // 0 -> ceil(log tol / log k) + 20
};

// Fixed-point iteration h <- mu * beurling(h) + mu, the partial sums of the
// Neumann series for (I - mu B)^(-1) mu. Stops when the relative l2 residual
// ||h - mu B h - mu|| / ||mu|| drops below tol.
PrincipalSolution solve_h(const BeltramiCoefficient& mu, const SolveOptions& opt = {});

// ||candidate - mu * beurling(candidate) - mu||_2.
double residual(const BeltramiCoefficient& mu, const Field& candidate);

// ||d_bar(phi) - mu * d(phi)||_2 with phi = z + displacement, derivatives
// spectral (d z = 1 and d_bar z = 0 enter analytically).
double beltrami_residual(const PrincipalSolution& sol);

struct DistortionSummary {
  double min_dphi = 0.0;        // min |d phi|
  double max_ratio = 0.0;       // max |d_bar phi / d phi|
  double jacobian_positive_fraction = 0.0;
  std::size_t cells = 0;
};

// Pointwise distortion of the solved map. An optional mask (1 = keep)
// restricts the statistics, e.g. to exclude a boundary layer.
DistortionSummary distortion_report(const PrincipalSolution& sol,
                                    const std::vector<std::uint8_t>* mask = nullptr);

}  // namespace bel
