#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace bel {

using cplx = std::complex<double>;

// Discretization of the plane as a flat torus [-L/2, L/2)^2 sampled on an
// N x N lattice. All operators in this library share one Fourier convention,
// fixed here once:
//
//   fhat(xi_k) = (L/N)^2 sum_{a,b} f(x_ab) exp(-2 pi i x_ab . xi_k)
//   f(x_ab)    = (1/L^2) sum_k fhat(xi_k) exp(+2 pi i x_ab . xi_k)
//
// with sample points x_ab = (-L/2 + a L/N, -L/2 + b L/N) and frequencies
// xi_k = (k1/L, k2/L), k_i in {-N/2, ..., N/2-1}. Writing the complex
// frequency as zeta = xi1 + i xi2, the Wirtinger derivatives have symbols
//   d    <->  pi i conj(zeta)
//   dbar <->  pi i zeta
// and the Beurling transform has symbol conj(zeta)/zeta exactly.
//
// The unmatched k = -N/2 rows/columns have no negated partner; every
// derivative and every non-even multiplier zeroes them to keep conjugate
// symmetry of real fields.
struct TorusGrid {
  int n = 0;         // samples per axis, power of two >= 4
  double side = 0.0; // physical side length L

  // Throws std::invalid_argument unless n is a power of two >= 4 and side > 0.
  static TorusGrid make(int n, double side);

  double spacing() const { return side / n; }
  double cell_area() const { return spacing() * spacing(); }
  double coord(int a) const { return -0.5 * side + a * spacing(); }
  cplx point(int a, int b) const { return {coord(a), coord(b)}; }

  // FFT bin index j in [0, n) -> signed wavenumber k in [-n/2, n/2-1].
  int wavenumber(int j) const { return j < n / 2 ? j : j - n; }
  bool nyquist(int j) const { return j == n / 2; }
  cplx zeta(int j1, int j2) const {
    return {wavenumber(j1) / side, wavenumber(j2) / side};
  }

  bool operator==(const TorusGrid&) const = default;
};

// Complex samples on a TorusGrid, row-major with index (a, b) -> a*n + b.
// Operations treat Fields as values; nothing mutates a Field after it has
// been handed out, so sharing across threads is safe.
class Field {
 public:
  Field() = default;
  explicit Field(const TorusGrid& g)
      : grid_(g), v_(static_cast<std::size_t>(g.n) * g.n) {}

  const TorusGrid& grid() const { return grid_; }
  int n() const { return grid_.n; }
  std::size_t size() const { return v_.size(); }

  cplx& at(int a, int b) { return v_[static_cast<std::size_t>(a) * grid_.n + b]; }
  const cplx& at(int a, int b) const {
    return v_[static_cast<std::size_t>(a) * grid_.n + b];
  }
  cplx& operator[](std::size_t i) { return v_[i]; }
  const cplx& operator[](std::size_t i) const { return v_[i]; }

  cplx* data() { return v_.data(); }
  const cplx* data() const { return v_.data(); }

 private:
  TorusGrid grid_;
  std::vector<cplx> v_;
};

TorusGrid make_grid(int n, double side);

// samples[a,b] = fn(x1, x2) at the grid points.
Field sample(const TorusGrid& g, const std::function<cplx(double, double)>& fn);

Field zeros(const TorusGrid& g);
Field constant(const TorusGrid& g, cplx value);

// Pointwise algebra. Grids must match (checked).
Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(cplx s, const Field& f);
Field pointwise_mul(const Field& a, const Field& b);
Field conjugate(const Field& f);

cplx mean(const Field& f);

// ((L/N)^2 sum |f|^p)^(1/p) for finite p >= 1; max |f| for p = infinity.
// p < 1 is rejected.
double lp_norm(const Field& f, double p);

// Normalized discrete Fourier transform and its inverse, exactly the
// convention documented on TorusGrid. The result lives on the same grid
// object with bin (j1, j2) stored at index j1*n + j2.
Field dft(const Field& f);
Field idft(const Field& fhat);

// out_hat(j1, j2) = factor(j1, j2) * fhat(j1, j2), transformed back. The
// factor is the mathematical symbol value; normalization is handled here.
Field spectral_map(const Field& f,
                   const std::function<cplx(int, int)>& factor);

// Wirtinger derivatives, spectral, Nyquist modes zeroed.
Field d(const Field& f);
Field d_bar(const Field& f);

// Discrete circular convolution (sum_w kernel(w) f(x - w) * cell_area), the
// product computed in frequency space. Identical to the direct sum up to
// round-off.
Field convolve_sampled_kernel(const Field& kernel, const Field& f);

}  // namespace bel
