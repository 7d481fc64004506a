#include "bel/transforms.hpp"

#include <cmath>
#include <stdexcept>

#include "bel/parallel.hpp"

namespace bel {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Field apply(const FourierMultiplier& m, const Field& f) {
  const TorusGrid& g = f.grid();
  return spectral_map(f, [&](int j1, int j2) -> cplx {
    if (j1 == 0 && j2 == 0) return m.zero_mode;
    if (!m.even && (g.nyquist(j1) || g.nyquist(j2))) return 0.0;
    return m.symbol(g.zeta(j1, j2));
  });
}

Field symbol_field(const FourierMultiplier& m, const TorusGrid& g) {
  Field out(g);
  for (int j1 = 0; j1 < g.n; ++j1)
    for (int j2 = 0; j2 < g.n; ++j2) {
      if (j1 == 0 && j2 == 0)
        out.at(j1, j2) = m.zero_mode;
      else if (!m.even && (g.nyquist(j1) || g.nyquist(j2)))
        out.at(j1, j2) = 0.0;
      else
        out.at(j1, j2) = m.symbol(g.zeta(j1, j2));
    }
  return out;
}

FourierMultiplier beurling_multiplier() {
  return {"beurling", [](cplx z) { return std::conj(z) / z; }, 0.0, true, 1.0};
}

FourierMultiplier cauchy_multiplier() {
  return {"cauchy", [](cplx z) { return 1.0 / (cplx(0.0, kPi) * z); }, 0.0,
          false, 0.0};
}

FourierMultiplier beurling_iter_multiplier(int m) {
  if (m < 1)
    throw std::invalid_argument("iterated Beurling transform requires m >= 1");
  return {"beurling^" + std::to_string(m),
          [m](cplx z) {
            const cplx u = std::conj(z) / z;
            cplx acc = 1.0;
            for (int i = 0; i < m; ++i) acc *= u;
            return acc;
          },
          0.0, true, 1.0};
}

FourierMultiplier bessel_multiplier(double s) {
  if (!(s > 0.0)) throw std::invalid_argument("Bessel potential requires s > 0");
  return {"bessel_" + std::to_string(s),
          [s](cplx z) {
            const double w = 2.0 * kPi * std::abs(z);
            return cplx(std::pow(1.0 + w * w, -0.5 * s), 0.0);
          },
          1.0, true, 1.0};
}

FourierMultiplier riesz_multiplier(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 2.0))
    throw std::invalid_argument("Riesz potential requires alpha in (0, 2)");
  return {"riesz_" + std::to_string(alpha),
          [alpha](cplx z) {
            return cplx(std::pow(2.0 * kPi * std::abs(z), -alpha), 0.0);
          },
          0.0, true, 1.0};
}

FourierMultiplier riesz_inverse_multiplier(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 2.0))
    throw std::invalid_argument("Riesz inverse requires alpha in (0, 2)");
  return {"riesz_inv_" + std::to_string(alpha),
          [alpha](cplx z) {
            return cplx(std::pow(2.0 * kPi * std::abs(z), alpha), 0.0);
          },
          0.0, true, 0.0};
}

Field beurling(const Field& f) { return apply(beurling_multiplier(), f); }

Field cauchy(const Field& f) { return apply(cauchy_multiplier(), f); }

Field beurling_iter(const Field& f, int m) {
  return apply(beurling_iter_multiplier(m), f);
}

Field bessel_potential(const Field& f, double s) {
  return apply(bessel_multiplier(s), f);
}

Field riesz_potential(const Field& f, double alpha) {
  return apply(riesz_multiplier(alpha), f);
}

double smoothstep(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

double radial_cutoff(double r, double eta) {
  return smoothstep((r - 0.5 * eta) / (0.5 * eta));
}

Field beurling_eta(const Field& f, double eta) {
  const TorusGrid& g = f.grid();
  if (!(eta >= 4.0 * g.spacing()))
    throw std::invalid_argument("beurling_eta requires eta >= 4 grid cells");
  const CZKernelSpec full = beurling_kernel();
  Field kernel = sample_kernel(g, full);
  parallel_for(static_cast<std::size_t>(g.n), [&](std::size_t a) {
    for (int b = 0; b < g.n; ++b) {
      const double r = std::abs(g.point(static_cast<int>(a), b));
      kernel.at(static_cast<int>(a), b) *= radial_cutoff(r, eta);
    }
  });
  return convolve_sampled_kernel(kernel, f);
}

CZKernelSpec::CZKernelSpec(std::string name, std::function<cplx(double)> omega,
                           bool even)
    : name_(std::move(name)), omega_(std::move(omega)), even_(even) {
  const int samples = 2048;
  cplx total = 0.0;
  double parity_err = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double theta = 2.0 * kPi * i / samples;
    total += omega_(theta);
    if (even_)
      parity_err =
          std::max(parity_err, std::abs(omega_(theta) - omega_(theta + kPi)));
  }
  circle_mean_abs_ = std::abs(total) * 2.0 * kPi / samples;
  if (even_ && parity_err > 1e-10)
    throw std::invalid_argument("kernel declared even is not even");
}

cplx CZKernelSpec::eval(cplx z) const {
  const double r2 = std::norm(z);
  if (r2 == 0.0) return 0.0;
  return omega_(std::arg(z)) / r2;
}

double cz_constant(const CZKernelSpec& kernel, int angular_samples) {
  if (kernel.circle_mean_abs() > 1e-10)
    throw std::invalid_argument(
        "Calderon-Zygmund constant requires zero circle mean");
  const double dtheta = 2.0 * kPi / angular_samples;
  double sup_omega = 0.0;
  double sup_grad = 0.0;
  for (int i = 0; i < angular_samples; ++i) {
    const double theta = dtheta * i;
    const cplx w = kernel.omega(theta);
    // On |x| = 1 the kernel is omega(theta)/r^2; in the polar frame the
    // Jacobian columns are the radial derivative -2*omega and the angular
    // derivative omega'. grad K |x|^3 is homogeneous of degree 0, so the
    // unit circle values are the sup.
    const cplx dw =
        (kernel.omega(theta + dtheta) - kernel.omega(theta - dtheta)) /
        (2.0 * dtheta);
    sup_omega = std::max(sup_omega, std::abs(w));
    sup_grad =
        std::max(sup_grad, std::sqrt(4.0 * std::norm(w) + std::norm(dw)));
  }
  return sup_omega + sup_grad;
}

CZKernelSpec beurling_kernel() {
  return CZKernelSpec(
      "beurling",
      [](double theta) { return -std::exp(cplx(0.0, -2.0 * theta)) / kPi; },
      true);
}

CZKernelSpec iterated_beurling_kernel(int m) {
  if (m < 1)
    throw std::invalid_argument("iterated Beurling kernel requires m >= 1");
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  return CZKernelSpec(
      "beurling^" + std::to_string(m),
      [m, sign](double theta) {
        return sign * static_cast<double>(m) / kPi *
               std::exp(cplx(0.0, -2.0 * m * theta));
      },
      true);
}

CZKernelSpec cos2theta_kernel() {
  return CZKernelSpec(
      "cos2theta",
      [](double theta) { return cplx(std::cos(2.0 * theta) / kPi, 0.0); },
      true);
}

Field sample_kernel(const TorusGrid& g, const CZKernelSpec& kernel) {
  Field out(g);
  parallel_for(static_cast<std::size_t>(g.n), [&](std::size_t a) {
    // The x = -L/2 row and column have no negated partner on the torus;
    // zeroing them keeps every remaining lattice shell closed under the
    // symmetries the angular cancellation relies on (the spatial analogue
    // of the Nyquist convention).
    if (a == 0) return;
    for (int b = 1; b < g.n; ++b)
      out.at(static_cast<int>(a), b) = kernel.eval(g.point(static_cast<int>(a), b));
  });
  return out;
}

}  // namespace bel
