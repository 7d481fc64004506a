#include "bel/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "bel/parallel.hpp"
#include "bel/transforms.hpp"

namespace bel {

namespace {

void check_sp(double s, double p, double q) {
  if (!(s > 0.0)) throw std::invalid_argument("smoothness s must be > 0");
  if (!(p >= 1.0) || !(q >= 1.0))
    throw std::invalid_argument("exponents p, q must be >= 1");
}

}  // namespace

DyadicFilterBank::DyadicFilterBank(const TorusGrid& g) : grid_(g) {
  const double cap = g.n / (2.0 * g.side);  // largest axis frequency
  top_level_ = cap >= 1.0
                   ? static_cast<int>(std::floor(std::log2(cap) + 1e-12))
                   : 0;
}

double DyadicFilterBank::symbol(int j, double rho) const {
  auto lowpass = [](double r) {
    // 1 on [0,1], 0 on [3/2,inf), quintic in between.
    return 1.0 - smoothstep(2.0 * (r - 1.0));
  };
  if (j == 0) return lowpass(rho);
  const double scale = std::ldexp(1.0, -j);  // 2^-j
  return lowpass(rho * scale) - lowpass(rho * scale * 2.0);
}

Field DyadicFilterBank::block(const Field& f, int j) const {
  if (j < 0 || j > top_level_)
    throw std::invalid_argument("filter bank level out of range");
  return spectral_map(f, [this, j](int j1, int j2) -> cplx {
    return symbol(j, std::abs(grid_.zeta(j1, j2)));
  });
}

double DyadicFilterBank::partition_defect() const {
  const double cap = std::ldexp(1.0, top_level_);
  double defect = 0.0;
  for (int j1 = 0; j1 < grid_.n; ++j1)
    for (int j2 = 0; j2 < grid_.n; ++j2) {
      const double rho = std::abs(grid_.zeta(j1, j2));
      if (rho > cap) continue;
      double sum = 0.0;
      for (int j = 0; j <= top_level_; ++j) sum += symbol(j, rho);
      defect = std::max(defect, std::abs(sum - 1.0));
    }
  return defect;
}

double besov_norm(const Field& f, double s, double p, double q) {
  check_sp(s, p, q);
  const DyadicFilterBank bank(f.grid());
  const Field hat = dft(f);
  double acc = 0.0;
  for (int j = 0; j <= bank.top_level(); ++j) {
    Field bhat(hat.grid());
    for (int j1 = 0; j1 < hat.n(); ++j1)
      for (int j2 = 0; j2 < hat.n(); ++j2)
        bhat.at(j1, j2) =
            hat.at(j1, j2) *
            bank.symbol(j, std::abs(hat.grid().zeta(j1, j2)));
    const double term = std::pow(2.0, j * s) * lp_norm(idft(bhat), p);
    acc += std::pow(term, q);
  }
  return std::pow(acc, 1.0 / q);
}

double triebel_norm(const Field& f, double s, double p, double q) {
  check_sp(s, p, q);
  const DyadicFilterBank bank(f.grid());
  const Field hat = dft(f);
  std::vector<double> acc(f.size(), 0.0);
  for (int j = 0; j <= bank.top_level(); ++j) {
    Field bhat(hat.grid());
    for (int j1 = 0; j1 < hat.n(); ++j1)
      for (int j2 = 0; j2 < hat.n(); ++j2)
        bhat.at(j1, j2) =
            hat.at(j1, j2) *
            bank.symbol(j, std::abs(hat.grid().zeta(j1, j2)));
    const Field b = idft(bhat);
    const double w = std::pow(2.0, j * s);
    parallel_for(f.size(), [&](std::size_t i) {
      acc[i] += std::pow(w * std::abs(b[i]), q);
    });
  }
  const double h2 = f.grid().cell_area();
  const double sum = chunked_sum<double>(f.size(), [&](std::size_t i) {
    return std::pow(acc[i], p / q);
  });
  return std::pow(h2 * sum, 1.0 / p);
}

namespace {

struct SourceSample {
  std::vector<std::size_t> sources;  // indices into interior list
  std::vector<double> weights;       // stratum sizes (1 when full)
  bool subsampled = false;
};

SourceSample pick_sources(std::size_t m, const DomainNormOptions& opt) {
  SourceSample out;
  if (m <= opt.max_source_points) {
    out.sources.resize(m);
    out.weights.assign(m, 1.0);
    for (std::size_t i = 0; i < m; ++i) out.sources[i] = i;
    return out;
  }
  out.subsampled = true;
  const std::size_t strata = opt.max_source_points;
  std::mt19937_64 rng(opt.seed ^ 0x9e3779b97f4a7c15ull);
  for (std::size_t si = 0; si < strata; ++si) {
    const std::size_t lo = si * m / strata;
    const std::size_t hi = (si + 1) * m / strata;
    std::uniform_int_distribution<std::size_t> pick(lo, hi - 1);
    out.sources.push_back(pick(rng));
    out.weights.push_back(static_cast<double>(hi - lo));
  }
  return out;
}

// Per-source inner sums v(x) over all interior y with |x-y| >= h, combined
// as sum_x w_x * v(x). Returns {total, estimator std}.
template <typename Inner>
std::pair<double, double> weighted_source_sum(const DomainMask& om,
                                              const SourceSample& sample,
                                              Inner&& inner) {
  const std::size_t s = sample.sources.size();
  std::vector<double> contrib(s);
  parallel_for(s, [&](std::size_t i) {
    contrib[i] = sample.weights[i] * inner(om.interior()[sample.sources[i]]);
  });
  double total = 0.0;
  for (double c : contrib) total += c;
  double est_std = 0.0;
  if (sample.subsampled && s > 1) {
    const double mean = total / s;
    double var = 0.0;
    for (double c : contrib) var += (c - mean) * (c - mean);
    var /= (s - 1);
    est_std = std::sqrt(var * s);
  }
  return {total, est_std};
}

}  // namespace

DomainNormResult besov_domain_norm(const Field& f, const DomainMask& om,
                                   double s, double p,
                                   const DomainNormOptions& opt) {
  if (!(s > 0.0) || !(s < 1.0))
    throw std::invalid_argument("intrinsic Besov norm needs s in (0,1)");
  if (!(p >= 1.0)) throw std::invalid_argument("p must be >= 1");
  const TorusGrid& g = f.grid();
  const double h = g.spacing();
  const double h2 = g.cell_area();
  const double cut2 = h * h * (1.0 - 1e-12);
  const double expo = 0.5 * (2.0 + s * p);
  const int n = g.n;
  const auto sample_set = pick_sources(om.interior().size(), opt);

  auto inner = [&](std::size_t xi) {
    const int xa = static_cast<int>(xi) / n;
    const int xb = static_cast<int>(xi) % n;
    const cplx x = g.point(xa, xb);
    const cplx fx = f[xi];
    double acc = 0.0;
    for (std::size_t yi : om.interior()) {
      const int ya = static_cast<int>(yi) / n;
      const int yb = static_cast<int>(yi) % n;
      const cplx dz = x - g.point(ya, yb);
      const double r2 = std::norm(dz);
      if (r2 < cut2) continue;
      acc += std::pow(std::abs(fx - f[yi]), p) / std::pow(r2, expo);
    }
    return acc;
  };

  auto [total, est_std] = weighted_source_sum(om, sample_set, inner);
  const double lp_part = chunked_sum<double>(
      om.interior().size(), [&](std::size_t i) {
        return std::pow(std::abs(f[om.interior()[i]]), p);
      });
  DomainNormResult out;
  out.pair_cutoff = h;
  out.subsampled = sample_set.subsampled;
  const double seminorm_p = total * h2 * h2;
  out.value = std::pow(lp_part * h2 + seminorm_p, 1.0 / p);
  // Spread of the seminorm part propagated through the p-th root.
  if (sample_set.subsampled && out.value > 0.0)
    out.estimator_std = est_std * h2 * h2 *
                        std::pow(out.value, 1.0 - p) / p;
  return out;
}

DomainNormResult sobolev_domain_norm(const Field& f, const DomainMask& om,
                                     double s, double p,
                                     const DomainNormOptions& opt) {
  if (!(s > 0.0) || !(s < 1.0))
    throw std::invalid_argument("intrinsic Sobolev norm needs s in (0,1)");
  if (!(p >= 1.0)) throw std::invalid_argument("p must be >= 1");
  const TorusGrid& g = f.grid();
  const double h = g.spacing();
  const double h2 = g.cell_area();
  const double cut2 = h * h * (1.0 - 1e-12);
  const double expo = 1.0 + s;  // (2 + 2s)/2 applied to r^2
  const int n = g.n;
  const auto sample_set = pick_sources(om.interior().size(), opt);

  // Outer variable y, inner integral over x.
  auto inner = [&](std::size_t yi) {
    const int ya = static_cast<int>(yi) / n;
    const int yb = static_cast<int>(yi) % n;
    const cplx y = g.point(ya, yb);
    const cplx fy = f[yi];
    double acc = 0.0;
    for (std::size_t xi : om.interior()) {
      const int xa = static_cast<int>(xi) / n;
      const int xb = static_cast<int>(xi) % n;
      const cplx dz = y - g.point(xa, xb);
      const double r2 = std::norm(dz);
      if (r2 < cut2) continue;
      const double diff = std::abs(f[xi] - fy);
      acc += diff * diff / std::pow(r2, expo);
    }
    return std::pow(acc * h2, 0.5 * p);
  };

  auto [total, est_std] = weighted_source_sum(om, sample_set, inner);
  const double lp_part = chunked_sum<double>(
      om.interior().size(), [&](std::size_t i) {
        return std::pow(std::abs(f[om.interior()[i]]), p);
      });
  DomainNormResult out;
  out.pair_cutoff = h;
  out.subsampled = sample_set.subsampled;
  out.value = std::pow(lp_part * h2 + total * h2, 1.0 / p);
  if (sample_set.subsampled && out.value > 0.0)
    out.estimator_std = est_std * h2 * std::pow(out.value, 1.0 - p) / p;
  return out;
}

W1pScanResult w1p_domain_scan(const Field& f, const DomainMask& om, double p,
                              const std::vector<double>& alphas,
                              const DomainNormOptions& opt) {
  if (!(p >= 1.0)) throw std::invalid_argument("p must be >= 1");
  if (alphas.empty())
    throw std::invalid_argument("alpha list must be nonempty");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] > 0.0) || alphas[i] > 0.5)
      throw std::invalid_argument("alphas must lie in (0, 1/2]");
    if (i && alphas[i] >= alphas[i - 1])
      throw std::invalid_argument("alphas must decrease");
  }
  const TorusGrid& g = f.grid();
  const double h = g.spacing();
  const double h2 = g.cell_area();
  const double cut2 = h * h * (1.0 - 1e-12);
  const int n = g.n;
  const auto sample_set = pick_sources(om.interior().size(), opt);
  const std::size_t na = alphas.size();

  std::vector<double> totals(na, 0.0);
  {
    const std::size_t srcs = sample_set.sources.size();
    std::vector<double> contrib(srcs * na);
    parallel_for(srcs, [&](std::size_t i) {
      const std::size_t xi = om.interior()[sample_set.sources[i]];
      const int xa = static_cast<int>(xi) / n;
      const int xb = static_cast<int>(xi) % n;
      const cplx x = g.point(xa, xb);
      const cplx fx = f[xi];
      std::vector<double> acc(na, 0.0);
      for (std::size_t yi : om.interior()) {
        const int ya = static_cast<int>(yi) / n;
        const int yb = static_cast<int>(yi) % n;
        const double r2 = std::norm(x - g.point(ya, yb));
        if (r2 < cut2) continue;
        const double base = std::pow(std::abs(fx - f[yi]), p);
        if (base == 0.0) continue;
        for (std::size_t ai = 0; ai < na; ++ai)
          acc[ai] += base / std::pow(r2, 0.5 * (2.0 + p - alphas[ai]));
      }
      for (std::size_t ai = 0; ai < na; ++ai)
        contrib[i * na + ai] = sample_set.weights[i] * acc[ai];
    });
    for (std::size_t i = 0; i < srcs; ++i)
      for (std::size_t ai = 0; ai < na; ++ai) totals[ai] += contrib[i * na + ai];
  }

  W1pScanResult out;
  for (std::size_t ai = 0; ai < na; ++ai)
    out.entries.push_back({alphas[ai], alphas[ai] * totals[ai] * h2 * h2});
  if (na >= 2) {
    const double last = out.entries[na - 1].scaled_integral;
    const double prev = out.entries[na - 2].scaled_integral;
    out.stabilized = std::abs(last - prev) <
                     0.1 * std::max(std::abs(prev), 1e-300);
    if (last == 0.0 && prev == 0.0) out.stabilized = true;
  }
  return out;
}

double lorentz_norm(std::vector<double> abs_values, double cell_area, double p,
                    double q) {
  if (!(p >= 1.0) || (!(q >= 1.0) && !std::isinf(q)))
    throw std::invalid_argument("Lorentz exponents need p >= 1 and q >= 1 or inf");
  std::sort(abs_values.begin(), abs_values.end(), std::greater<double>());
  if (std::isinf(q)) {
    double sup = 0.0;
    for (std::size_t i = 0; i < abs_values.size(); ++i) {
      if (abs_values[i] == 0.0) break;
      const double t_right = cell_area * static_cast<double>(i + 1);
      sup = std::max(sup, std::pow(t_right, 1.0 / p) * abs_values[i]);
    }
    return sup;
  }
  // f* is constant on [i h^2, (i+1) h^2); each step integrates in closed
  // form: int t^(q/p - 1) dt = (p/q) * t^(q/p).
  const double e = q / p;
  double acc = 0.0;
  double t_prev_pow = 0.0;
  for (std::size_t i = 0; i < abs_values.size(); ++i) {
    const double t_right = cell_area * static_cast<double>(i + 1);
    const double t_right_pow = std::pow(t_right, e);
    if (abs_values[i] > 0.0)
      acc += std::pow(abs_values[i], q) * (t_right_pow - t_prev_pow);
    t_prev_pow = t_right_pow;
    if (abs_values[i] == 0.0) break;
  }
  return std::pow(acc * p / q, 1.0 / q);
}

double lorentz_norm(const Field& f, double p, double q) {
  std::vector<double> vals(f.size());
  parallel_for(f.size(), [&](std::size_t i) { vals[i] = std::abs(f[i]); });
  return lorentz_norm(std::move(vals), f.grid().cell_area(), p, q);
}

Field gradient_magnitude(const Field& f) {
  const Field fd = d(f);
  const Field fdb = d_bar(f);
  Field out(f.grid());
  parallel_for(f.size(), [&](std::size_t i) {
    out[i] = std::sqrt(2.0 * (std::norm(fd[i]) + std::norm(fdb[i])));
  });
  return out;
}

double riesz_potential_space_norm(const Field& f, double alpha) {
  if (!(alpha > 0.0) || !(alpha < 2.0))
    throw std::invalid_argument("Riesz potential space needs alpha in (0,2)");
  if (alpha == 1.0) return lorentz_norm(gradient_magnitude(f), 2.0, 1.0);
  const double rms = lp_norm(f, 2.0) / f.grid().side;
  if (std::abs(mean(f)) > 1e-9 * std::max(rms, 1e-300))
    throw std::invalid_argument(
        "general-alpha Riesz path requires a mean-zero field");
  const Field g = apply(riesz_inverse_multiplier(alpha), f);
  return lorentz_norm(g, 2.0 / alpha, 1.0);
}

}  // namespace bel
