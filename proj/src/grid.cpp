#include "bel/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>

#include "bel/parallel.hpp"

namespace bel {

namespace {

struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

// Plan creation is not thread-safe in FFTW; creation is serialized and the
// cached plans are then executed via the new-array interface, which is safe
// to call concurrently. All execution buffers come from fftw_malloc so their
// alignment matches the planning buffers.
PlanPair plans_for(int n) {
  static std::mutex mu;
  static std::map<int, PlanPair> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  fftw_complex* a = fftw_alloc_complex(static_cast<std::size_t>(n) * n);
  fftw_complex* b = fftw_alloc_complex(static_cast<std::size_t>(n) * n);
  PlanPair p;
  p.fwd = fftw_plan_dft_2d(n, n, a, b, FFTW_FORWARD, FFTW_ESTIMATE);
  p.bwd = fftw_plan_dft_2d(n, n, a, b, FFTW_BACKWARD, FFTW_ESTIMATE);
  fftw_free(a);
  fftw_free(b);
  cache.emplace(n, p);
  return p;
}

class FftBuffer {
 public:
  explicit FftBuffer(std::size_t count)
      : ptr_(fftw_alloc_complex(count)) {
    if (!ptr_) throw std::bad_alloc();
  }
  ~FftBuffer() { fftw_free(ptr_); }
  FftBuffer(const FftBuffer&) = delete;
  FftBuffer& operator=(const FftBuffer&) = delete;
  fftw_complex* get() { return ptr_; }
  cplx* as_cplx() { return reinterpret_cast<cplx*>(ptr_); }

 private:
  fftw_complex* ptr_;
};

// Unnormalized 2D DFT of an n x n array, sign = FFTW_FORWARD or BACKWARD.
void raw_fft(int n, const cplx* in, cplx* out, int sign) {
  const std::size_t count = static_cast<std::size_t>(n) * n;
  PlanPair plans = plans_for(n);
  FftBuffer bin(count), bout(count);
  std::memcpy(bin.get(), in, count * sizeof(cplx));
  fftw_execute_dft(sign == FFTW_FORWARD ? plans.fwd : plans.bwd, bin.get(),
                   bout.get());
  std::memcpy(out, bout.as_cplx(), count * sizeof(cplx));
}

void check_same_grid(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid()))
    throw std::invalid_argument("fields live on different grids");
}

}  // namespace

TorusGrid TorusGrid::make(int n, double side) {
  if (n < 4 || (n & (n - 1)) != 0)
    throw std::invalid_argument("grid size must be a power of two >= 4");
  if (!(side > 0.0))
    throw std::invalid_argument("grid side length must be positive");
  return TorusGrid{n, side};
}

TorusGrid make_grid(int n, double side) { return TorusGrid::make(n, side); }

Field sample(const TorusGrid& g,
             const std::function<cplx(double, double)>& fn) {
  Field f(g);
  parallel_for(static_cast<std::size_t>(g.n), [&](std::size_t a) {
    const double x1 = g.coord(static_cast<int>(a));
    for (int b = 0; b < g.n; ++b)
      f.at(static_cast<int>(a), b) = fn(x1, g.coord(b));
  });
  return f;
}

Field zeros(const TorusGrid& g) { return Field(g); }

Field constant(const TorusGrid& g, cplx value) {
  Field f(g);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = value;
  return f;
}

Field operator+(const Field& a, const Field& b) {
  check_same_grid(a, b);
  Field out(a.grid());
  parallel_for(a.size(), [&](std::size_t i) { out[i] = a[i] + b[i]; });
  return out;
}

Field operator-(const Field& a, const Field& b) {
  check_same_grid(a, b);
  Field out(a.grid());
  parallel_for(a.size(), [&](std::size_t i) { out[i] = a[i] - b[i]; });
  return out;
}

Field operator*(cplx s, const Field& f) {
  Field out(f.grid());
  parallel_for(f.size(), [&](std::size_t i) { out[i] = s * f[i]; });
  return out;
}

Field pointwise_mul(const Field& a, const Field& b) {
  check_same_grid(a, b);
  Field out(a.grid());
  parallel_for(a.size(), [&](std::size_t i) { out[i] = a[i] * b[i]; });
  return out;
}

Field conjugate(const Field& f) {
  Field out(f.grid());
  parallel_for(f.size(), [&](std::size_t i) { out[i] = std::conj(f[i]); });
  return out;
}

cplx mean(const Field& f) {
  const cplx total = chunked_sum<cplx>(f.size(), [&](std::size_t i) { return f[i]; });
  return total / static_cast<double>(f.size());
}

double lp_norm(const Field& f, double p) {
  if (std::isinf(p)) {
    std::vector<double> rowmax(f.n(), 0.0);
    parallel_for(static_cast<std::size_t>(f.n()), [&](std::size_t a) {
      double m = 0.0;
      for (int b = 0; b < f.n(); ++b)
        m = std::max(m, std::abs(f.at(static_cast<int>(a), b)));
      rowmax[a] = m;
    });
    double m = 0.0;
    for (double r : rowmax) m = std::max(m, r);
    return m;
  }
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm requires p >= 1");
  const double sum = chunked_sum<double>(
      f.size(), [&](std::size_t i) { return std::pow(std::abs(f[i]), p); });
  return std::pow(f.grid().cell_area() * sum, 1.0 / p);
}

Field dft(const Field& f) {
  const TorusGrid& g = f.grid();
  Field out(g);
  raw_fft(g.n, f.data(), out.data(), FFTW_FORWARD);
  const double scale = g.cell_area();
  parallel_for(static_cast<std::size_t>(g.n), [&](std::size_t j1) {
    for (int j2 = 0; j2 < g.n; ++j2) {
      const double phase = ((static_cast<int>(j1) + j2) & 1) ? -scale : scale;
      out.at(static_cast<int>(j1), j2) *= phase;
    }
  });
  return out;
}

Field idft(const Field& fhat) {
  const TorusGrid& g = fhat.grid();
  Field tmp(g);
  const double scale = 1.0 / (g.side * g.side);
  parallel_for(static_cast<std::size_t>(g.n), [&](std::size_t j1) {
    for (int j2 = 0; j2 < g.n; ++j2) {
      const double phase = ((static_cast<int>(j1) + j2) & 1) ? -scale : scale;
      tmp.at(static_cast<int>(j1), j2) = phase * fhat.at(static_cast<int>(j1), j2);
    }
  });
  Field out(g);
  raw_fft(g.n, tmp.data(), out.data(), FFTW_BACKWARD);
  return out;
}

Field spectral_map(const Field& f,
                   const std::function<cplx(int, int)>& factor) {
  const TorusGrid& g = f.grid();
  Field hat(g);
  raw_fft(g.n, f.data(), hat.data(), FFTW_FORWARD);
  const double norm = 1.0 / (static_cast<double>(g.n) * g.n);
  parallel_for(static_cast<std::size_t>(g.n), [&](std::size_t j1) {
    for (int j2 = 0; j2 < g.n; ++j2)
      hat.at(static_cast<int>(j1), j2) *= norm * factor(static_cast<int>(j1), j2);
  });
  Field out(g);
  raw_fft(g.n, hat.data(), out.data(), FFTW_BACKWARD);
  return out;
}

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Field d(const Field& f) {
  const TorusGrid& g = f.grid();
  return spectral_map(f, [&g](int j1, int j2) -> cplx {
    if (g.nyquist(j1) || g.nyquist(j2)) return 0.0;
    return cplx(0.0, kPi) * std::conj(g.zeta(j1, j2));
  });
}

Field d_bar(const Field& f) {
  const TorusGrid& g = f.grid();
  return spectral_map(f, [&g](int j1, int j2) -> cplx {
    if (g.nyquist(j1) || g.nyquist(j2)) return 0.0;
    return cplx(0.0, kPi) * g.zeta(j1, j2);
  });
}

Field convolve_sampled_kernel(const Field& kernel, const Field& f) {
  check_same_grid(kernel, f);
  const TorusGrid& g = f.grid();
  Field khat(g), fhat(g);
  raw_fft(g.n, kernel.data(), khat.data(), FFTW_FORWARD);
  raw_fft(g.n, f.data(), fhat.data(), FFTW_FORWARD);
  // The kernel array is sampled at the grid points of [-L/2, L/2)^2, while
  // circular convolution wants it indexed by offset from zero; the half-
  // period shift is the parity phase in frequency.
  const double scale = g.cell_area() / (static_cast<double>(g.n) * g.n);
  parallel_for(static_cast<std::size_t>(g.n), [&](std::size_t j1) {
    for (int j2 = 0; j2 < g.n; ++j2) {
      const double phase = ((static_cast<int>(j1) + j2) & 1) ? -scale : scale;
      fhat.at(static_cast<int>(j1), j2) *= phase * khat.at(static_cast<int>(j1), j2);
    }
  });
  Field out(g);
  raw_fft(g.n, fhat.data(), out.data(), FFTW_BACKWARD);
  return out;
}

}  // namespace bel
