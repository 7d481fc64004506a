#include "bel/beltrami.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "bel/parallel.hpp"
#include "bel/transforms.hpp"

namespace bel {

BeltramiCoefficient BeltramiCoefficient::make(Field f) {
  const TorusGrid& g = f.grid();
  double sup = 0.0;
  double support = 0.0;
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b) {
      const double m = std::abs(f.at(a, b));
      if (m == 0.0) continue;
      sup = std::max(sup, m);
      support = std::max(support, std::abs(g.point(a, b)));
    }
  if (sup >= 1.0)
    throw std::invalid_argument("Beltrami coefficient needs sup norm < 1");
  if (support > 0.25 * g.side + 1e-12)
    throw std::invalid_argument(
        "Beltrami coefficient support must stay within L/4 of the origin");
  return BeltramiCoefficient{std::move(f), sup, support};
}

PrincipalSolution solve_h(const BeltramiCoefficient& mu, const SolveOptions& opt) {
  if (!(opt.tol > 0.0)) throw std::invalid_argument("solver tolerance must be > 0");
  const Field& m = mu.field;
  const double mu_norm = lp_norm(m, 2.0);

  PrincipalSolution sol;
  sol.mu = mu;
  sol.h = m;
  sol.iterations = 0;

  if (mu.k == 0.0 || mu_norm == 0.0) {
    sol.h = zeros(m.grid());
    sol.displacement = zeros(m.grid());
    sol.iterations = 1;
    sol.converged = true;
    sol.residual_history.push_back(0.0);
    return sol;
  }

  int max_iter = opt.max_iter;
  if (max_iter <= 0)
    max_iter = static_cast<int>(
                   std::ceil(std::log(opt.tol) / std::log(mu.k))) + 20;

  Field h = m;
  for (int it = 1; it <= max_iter; ++it) {
    const Field next = pointwise_mul(m, beurling(h)) + m;
    // next - h is exactly the defect of h in (I - mu B) h = mu.
    const double res = lp_norm(next - h, 2.0) / mu_norm;
    sol.residual_history.push_back(res);
    h = next;
    sol.iterations = it;
    if (res <= opt.tol) {
      sol.converged = true;
      break;
    }
  }
  sol.h = std::move(h);
  sol.displacement = cauchy(sol.h);
  return sol;
}

double residual(const BeltramiCoefficient& mu, const Field& candidate) {
  const Field defect =
      candidate - (pointwise_mul(mu.field, beurling(candidate)) + mu.field);
  return lp_norm(defect, 2.0);
}

double beltrami_residual(const PrincipalSolution& sol) {
  const Field dbar_phi = d_bar(sol.displacement);           // d_bar z = 0
  const Field dphi = constant(sol.displacement.grid(), 1.0) + d(sol.displacement);
  return lp_norm(dbar_phi - pointwise_mul(sol.mu.field, dphi), 2.0);
}

DistortionSummary distortion_report(const PrincipalSolution& sol,
                                    const std::vector<std::uint8_t>* mask) {
  const Field dphi = constant(sol.displacement.grid(), 1.0) + d(sol.displacement);
  const Field& dbar_phi = sol.h;  // d_bar(z + C h) = h by construction

  DistortionSummary out;
  out.min_dphi = std::numeric_limits<double>::infinity();
  std::size_t positive = 0, cells = 0;
  for (std::size_t i = 0; i < dphi.size(); ++i) {
    if (mask && !(*mask)[i]) continue;
    ++cells;
    const double a = std::abs(dphi[i]);
    const double b = std::abs(dbar_phi[i]);
    out.min_dphi = std::min(out.min_dphi, a);
    if (a > 0.0) out.max_ratio = std::max(out.max_ratio, b / a);
    if (a * a - b * b > 0.0) ++positive;
  }
  out.cells = cells;
  out.jacobian_positive_fraction =
      cells ? static_cast<double>(positive) / cells : 0.0;
  return out;
}

}  // namespace bel
