#pragma once

#include <functional>
#include <string>

#include "bel/grid.hpp"

namespace bel {

// A frequency-domain symbol applied through the grid's transform pair. The
// zero mode is always set explicitly, and symbols that are not even in zeta
// zero the unmatched Nyquist rows/columns.
struct FourierMultiplier {
  std::string name;
  std::function<cplx(cplx)> symbol;  // evaluated at zeta = xi1 + i xi2, zeta != 0
  cplx zero_mode = 0.0;
  bool even = false;  // symbol(-zeta) == symbol(zeta); if false, Nyquist is zeroed
  double bound = 1.0; // declared sup of |symbol|
};

Field apply(const FourierMultiplier& m, const Field& f);

// Evaluates the symbol on the grid bins (for debugging dumps).
Field symbol_field(const FourierMultiplier& m, const TorusGrid& g);

FourierMultiplier beurling_multiplier();
FourierMultiplier cauchy_multiplier();
FourierMultiplier beurling_iter_multiplier(int m);
FourierMultiplier bessel_multiplier(double s);
FourierMultiplier riesz_multiplier(double alpha);
// Symbol |2 pi xi|^alpha with zero mode dropped; inverse of riesz_multiplier
// on mean-zero fields.
FourierMultiplier riesz_inverse_multiplier(double alpha);

// Beurling transform, symbol conj(zeta)/zeta, mean sent to zero.
Field beurling(const Field& f);

// Cauchy transform, symbol 1/(pi i zeta), mean sent to zero. Satisfies
// d(cauchy(f)) = beurling(f) and d_bar(cauchy(f)) = f - mean(f).
Field cauchy(const Field& f);

// Iterated Beurling transform, symbol (conj(zeta)/zeta)^m, m >= 1.
Field beurling_iter(const Field& f, int m);

// Bessel potential (1 + |2 pi xi|^2)^(-s/2), s > 0.
Field bessel_potential(const Field& f, double s);

// Riesz potential |2 pi xi|^(-alpha), alpha in (0, 2), zero mode dropped.
Field riesz_potential(const Field& f, double alpha);

// Truncated-kernel Beurling transform: discrete convolution with
// phi_eta(z) * (-1/(pi z^2)), phi_eta a quintic smoothstep vanishing for
// |z| < eta/2 and equal to 1 for |z| > eta. Rejects eta < 4 grid cells.
Field beurling_eta(const Field& f, double eta);

// Quintic smoothstep: 0 for t <= 0, 1 for t >= 1, 6t^5 - 15t^4 + 10t^3 in
// between (C^2 at both ends). Shared by every cutoff in the library.
double smoothstep(double t);

// Radial cutoff for the truncated Beurling kernel: 0 on [0, eta/2], 1 on
// [eta, inf).
double radial_cutoff(double r, double eta);

// An even homogeneous degree -2 kernel omega(x/|x|) / |x|^2 described by its
// restriction to the unit circle. The constructor certifies the zero circle
// mean and the declared parity on a dense angular grid.
class CZKernelSpec {
 public:
  CZKernelSpec(std::string name, std::function<cplx(double)> omega, bool even);

  const std::string& name() const { return name_; }
  bool even() const { return even_; }
  double circle_mean_abs() const { return circle_mean_abs_; }

  cplx omega(double theta) const { return omega_(theta); }

  // Kernel value at offset z (0 at the origin: the singular cell of every
  // quadrature contributes nothing).
  cplx eval(cplx z) const;

 private:
  std::string name_;
  std::function<cplx(double)> omega_;
  bool even_;
  double circle_mean_abs_;
};

// ||K|x|^2||_inf + ||grad K |x|^3||_inf by dense angular sampling, the
// gradient taken of the full kernel as a map R^2 -> C with Frobenius norm of
// the real Jacobian. Rejects kernels without zero circle mean.
double cz_constant(const CZKernelSpec& kernel, int angular_samples = 4096);

CZKernelSpec beurling_kernel();
// Kernel of the m-iterated Beurling transform:
// (-1)^m m conj(z)^(m-1) / (pi z^(m+1)).
CZKernelSpec iterated_beurling_kernel(int m);
// A second even test kernel, omega(theta) = cos(2 theta) / pi.
CZKernelSpec cos2theta_kernel();

// Kernel samples on the torus, K(x_ab) with 0 at the origin.
Field sample_kernel(const TorusGrid& g, const CZKernelSpec& kernel);

}  // namespace bel
