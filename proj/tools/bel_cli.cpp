// Command-line driver: reproducible experiments over the library modules.
// Exit codes: 0 ok, 1 math failure, 2 usage/config error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cerrno>
#include <cstdio>
#include <fcntl.h>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <unistd.h>

#include "bel/beltrami.hpp"
#include "bel/domains.hpp"
#include "bel/generators.hpp"
#include "bel/grid.hpp"
#include "bel/io.hpp"
#include "bel/spaces.hpp"
#include "bel/transforms.hpp"
#include "bel/version.hpp"

using json = nlohmann::json;
using namespace bel;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMath = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MathError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string experiment;
  int n = 256;
  double side = 8.0;
  std::string mu = "bump:k=0.5,radius=1";
  std::vector<std::string> spaces;  // "s:p:q"
  double s = 0.5, p = 2.0, q = 2.0;
  double tol = 1e-10;
  int max_iter = 0;
  std::uint64_t seed = 0;
  std::string out = "out";
  bool pgm = false;
  std::vector<double> p_list;
  std::vector<int> n_list;
  std::vector<double> radii;
  std::string domain = "disk";
  std::string function_id = "x1-on-square";
  std::string space = "besov";
  double half_side = 1.0;
  int pairs = 20;

  json to_json() const {
    json j;
    j["experiment"] = experiment;
    j["grid"] = {{"N", n}, {"L", side}};
    j["mu"] = mu;
    j["spaces"] = spaces;
    j["s"] = s;
    j["p"] = p;
    j["q"] = q;
    j["tol"] = tol;
    j["max_iter"] = max_iter;
    j["seed"] = seed;
    j["out"] = out;
    j["pgm"] = pgm;
    j["p_list"] = p_list;
    j["N_list"] = n_list;
    j["radii"] = radii;
    j["domain"] = domain;
    j["f"] = function_id;
    j["space"] = space;
    j["half_side"] = half_side;
    j["pairs"] = pairs;
    return j;
  }
  std::string hash() const { return fnv1a_hex(to_json().dump()); }
};

// One experiment process per output directory.
class DirLock {
 public:
  explicit DirLock(const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    path_ = dir / ".bel.lock";
    fd_ = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd_ < 0)
      throw UsageError("output directory is locked by another run: " +
                       path_.string());
    const std::string pid = std::to_string(::getpid()) + "\n";
    [[maybe_unused]] auto n = ::write(fd_, pid.data(), pid.size());
  }
  ~DirLock() {
    if (fd_ >= 0) {
      ::close(fd_);
      ::unlink(path_.c_str());
    }
  }
  DirLock(const DirLock&) = delete;
  DirLock& operator=(const DirLock&) = delete;

 private:
  std::filesystem::path path_;
  int fd_ = -1;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::string& header,
            const std::string& config_hash)
      : out_(path) {
    if (!out_) throw UsageError("cannot write " + path.string());
    out_ << "# version=" << kVersion << " config=" << config_hash << "\n";
    out_ << header << "\n";
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i)
      out_ << cells[i] << (i + 1 < cells.size() ? "," : "");
    out_ << "\n";
  }

 private:
  std::ofstream out_;
};

double parse_kv(const std::string& params, const std::string& key,
                std::optional<double> fallback = std::nullopt) {
  std::stringstream ss(params);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) continue;
    if (item.substr(0, eq) == key) return std::stod(item.substr(eq + 1));
  }
  if (fallback) return *fallback;
  throw UsageError("coefficient spec is missing parameter '" + key + "'");
}

Field coefficient_part(const TorusGrid& g, const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string params = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "zero") return zeros(g);
  if (kind == "disk") {
    const double k = parse_kv(params, "k");
    const double radius = parse_kv(params, "radius", 1.0);
    return disk_indicator(g, k, 0.0, radius);
  }
  if (kind == "bump") {
    const double k = parse_kv(params, "k");
    const double radius = parse_kv(params, "radius", 1.0);
    const double smooth = parse_kv(params, "smoothness", 1.0);
    return plateau_bump(g, k, 0.0, radius, static_cast<int>(smooth));
  }
  throw UsageError("unknown coefficient generator '" + kind + "'");
}

// "disk:k=0.5", "bump:k=0.5,radius=1,smoothness=2", "zero", or a
// '+'-separated composite.
BeltramiCoefficient make_coefficient(const TorusGrid& g, const std::string& spec) {
  Field total = zeros(g);
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, '+'))
    if (!part.empty()) total = total + coefficient_part(g, part);
  try {
    return BeltramiCoefficient::make(std::move(total));
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("invalid coefficient: ") + e.what());
  }
}

DomainMask make_domain(const TorusGrid& g, const std::string& name,
                       double half_side) {
  if (name == "disk") return DomainMask::disk(g, 0.0, half_side);
  if (name == "square")
    return DomainMask::rectangle(g, 0.0, half_side, half_side);
  if (name == "smoothed-square")
    return DomainMask::smoothed_square(g, 0.0, half_side, 0.1 * 2.0 * half_side);
  throw UsageError("unknown domain '" + name + "'");
}

Field make_function(const TorusGrid& g, const std::string& id,
                    std::uint64_t seed) {
  if (id == "x1-on-square")
    return sample(g, [](double x1, double) { return cplx(x1, 0.0); });
  if (id == "gaussian") return gaussian_bump(g, 0.0, 1.0);
  if (id == "bump") return plateau_bump(g, 1.0, 0.0, 1.0, 1);
  if (id == "chi-disk") return disk_indicator(g, 1.0, 0.0, 1.0);
  if (id == "random-smooth") return random_smooth_bump_field(g, 0.9, seed);
  throw UsageError("unknown function id '" + id + "'");
}

void write_json(const std::filesystem::path& path, json j,
                const ExperimentConfig& cfg) {
  j["config_hash"] = cfg.hash();
  j["version"] = kVersion;
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

int cmd_solve(const ExperimentConfig& cfg) {
  const TorusGrid g = make_grid(cfg.n, cfg.side);
  const BeltramiCoefficient mu = make_coefficient(g, cfg.mu);
  SolveOptions opt;
  opt.tol = cfg.tol;
  opt.max_iter = cfg.max_iter;
  const PrincipalSolution sol = solve_h(mu, opt);

  const std::filesystem::path dir(cfg.out);
  write_bfld((dir / "h.bfld").string(), sol.h);
  write_bfld((dir / "displacement.bfld").string(), sol.displacement);
  if (cfg.pgm) {
    write_pgm((dir / "h.pgm").string(), sol.h);
    write_pgm((dir / "displacement.pgm").string(), sol.displacement);
  }

  const DistortionSummary dist = distortion_report(sol);
  json report;
  report["k"] = mu.k;
  report["N"] = cfg.n;
  report["L"] = cfg.side;
  report["iterations"] = sol.iterations;
  report["converged"] = sol.converged;
  report["residuals"] = sol.residual_history;
  report["beltrami_residual"] = beltrami_residual(sol);
  report["distortion"] = {{"min_dphi", dist.min_dphi},
                          {"max_ratio", dist.max_ratio},
                          {"jacobian_positive_fraction",
                           dist.jacobian_positive_fraction}};
  write_json(dir / "report.json", report, cfg);

  if (!sol.converged) {
    json err;
    err["error"] = "solver did not converge";
    err["last_residual"] = sol.residual_history.empty()
                               ? 0.0
                               : sol.residual_history.back();
    write_json(dir / "error.json", err, cfg);
    std::fprintf(stderr, "%s\n", err.dump().c_str());
    return kExitMath;
  }
  return kExitOk;
}

int cmd_regularity_transfer(const ExperimentConfig& cfg) {
  if (cfg.spaces.empty())
    throw UsageError("regularity-transfer needs --spaces s:p:q[,s:p:q...]");
  std::vector<int> ns = cfg.n_list.empty() ? std::vector<int>{256, 512, 1024}
                                           : cfg.n_list;
  const std::filesystem::path dir(cfg.out);
  CsvWriter csv(dir / "regularity_transfer.csv",
                "generator,s,p,q,N,mu_norm,h_norm,ratio,hypothesis",
                cfg.hash());

  bool unstable = false;
  for (const std::string& sp : cfg.spaces) {
    double s, p, q;
    if (std::sscanf(sp.c_str(), "%lf:%lf:%lf", &s, &p, &q) != 3)
      throw UsageError("bad space triple '" + sp + "', want s:p:q");
    const bool hypothesis = s * p > 2.0;
    std::vector<double> ratios;
    for (int n : ns) {
      const TorusGrid g = make_grid(n, cfg.side);
      const BeltramiCoefficient mu = make_coefficient(g, cfg.mu);
      SolveOptions opt;
      opt.tol = cfg.tol;
      const PrincipalSolution sol = solve_h(mu, opt);
      if (!sol.converged) throw MathError("solver did not converge");
      const double mu_norm = besov_norm(mu.field, s, p, q);
      const double h_norm = besov_norm(sol.h, s, p, q);
      const bool na = mu_norm == 0.0;
      if (!na) ratios.push_back(h_norm / mu_norm);
      csv.row({cfg.mu, fmt(s), fmt(p), fmt(q), std::to_string(n), fmt(mu_norm),
               fmt(h_norm), na ? "NA" : fmt(h_norm / mu_norm),
               hypothesis ? "ok" : "outside-hypothesis"});
    }
    if (hypothesis && ratios.size() >= 2) {
      const double lo = *std::min_element(ratios.begin(), ratios.end());
      const double hi = *std::max_element(ratios.begin(), ratios.end());
      const double mid = 0.5 * (lo + hi);
      if (hi - mid > 0.25 * mid) unstable = true;
    }
  }
  if (unstable) {
    std::fprintf(stderr, "{\"error\": \"transfer ratio unstable across N\"}\n");
    return kExitMath;
  }
  return kExitOk;
}

int cmd_corner(const ExperimentConfig& cfg) {
  if (cfg.p_list.empty()) throw UsageError("corner needs a nonempty --p list");
  const std::vector<int> ns =
      cfg.n_list.empty() ? std::vector<int>{128, 256, 512, 1024} : cfg.n_list;
  CornerScanResult res;
  try {
    res = corner_scan(0.0, cfg.half_side, cfg.half_side, cfg.side, cfg.p_list, ns);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const std::filesystem::path dir(cfg.out);
  CsvWriter csv(dir / "corner_scan.csv", "p,N,value,classification", cfg.hash());
  for (const auto& row : res.rows) {
    std::string cls;
    for (const auto& c : res.classes)
      if (c.p == row.p) cls = c.diverging ? "diverging" : "stabilizing";
    csv.row({fmt(row.p), std::to_string(row.n), fmt(row.value), cls});
  }
  return kExitOk;
}

int cmd_norms(const ExperimentConfig& cfg) {
  const TorusGrid g = make_grid(cfg.n, cfg.side);
  const Field f = make_function(g, cfg.function_id, cfg.seed);
  const std::filesystem::path dir(cfg.out);
  CsvWriter csv(dir / "norms.csv",
                "function,space,s,p,q,N,value,cutoff,estimator_std",
                cfg.hash());
  DomainNormOptions opt;
  opt.seed = cfg.seed;

  double value = 0.0, cutoff = 0.0, est_std = 0.0;
  if (cfg.space == "besov") {
    value = besov_norm(f, cfg.s, cfg.p, cfg.q);
  } else if (cfg.space == "triebel") {
    value = triebel_norm(f, cfg.s, cfg.p, cfg.q);
  } else if (cfg.space == "lorentz") {
    value = lorentz_norm(f, cfg.p, cfg.q);
  } else if (cfg.space == "riesz") {
    value = riesz_potential_space_norm(f, cfg.s);
  } else if (cfg.space == "besov-domain" || cfg.space == "sobolev-domain") {
    const DomainMask square = DomainMask::rectangle(g, 0.0, 0.5, 0.5);
    const DomainNormResult r =
        cfg.space == "besov-domain"
            ? besov_domain_norm(f, square, cfg.s, cfg.p, opt)
            : sobolev_domain_norm(f, square, cfg.s, cfg.p, opt);
    value = r.value;
    cutoff = r.pair_cutoff;
    est_std = r.estimator_std;
  } else {
    throw UsageError("unknown space '" + cfg.space + "'");
  }
  csv.row({cfg.function_id, cfg.space, fmt(cfg.s), fmt(cfg.p), fmt(cfg.q),
           std::to_string(cfg.n), fmt(value), fmt(cutoff), fmt(est_std)});
  return kExitOk;
}

int cmd_tchi(const ExperimentConfig& cfg) {
  const TorusGrid g = make_grid(cfg.n, cfg.side);
  const DomainMask omega = make_domain(g, cfg.domain, cfg.half_side);
  const Field t = t_chi(beurling_kernel(), omega);
  const std::filesystem::path dir(cfg.out);
  write_bfld((dir / "tchi.bfld").string(), t);
  if (cfg.pgm) write_pgm((dir / "tchi.pgm").string(), t);
  double core_sup = 0.0;
  for (std::size_t i : omega.core_indices())
    core_sup = std::max(core_sup, std::abs(t[i]));
  json stats;
  stats["domain"] = cfg.domain;
  stats["N"] = cfg.n;
  stats["core_sup"] = core_sup;
  stats["interior_samples"] = omega.interior().size();
  stats["ring_excluded_samples"] =
      omega.interior().size() - omega.core_indices().size();
  write_json(dir / "tchi_stats.json", stats, cfg);
  return kExitOk;
}

int cmd_bump_bound(const ExperimentConfig& cfg) {
  if (cfg.radii.empty()) throw UsageError("bump-bound needs a --radii list");
  const TorusGrid g = make_grid(cfg.n, cfg.side);
  if (cfg.domain == "square")
    throw UsageError("bump-bound rejects the rectangle domain");
  const DomainMask omega = make_domain(g, cfg.domain, cfg.half_side);
  std::vector<BallBump> bumps;
  for (double r : cfg.radii) {
    bumps.push_back({0.0, r});
    bumps.push_back({cplx(cfg.half_side - 1.5 * r, 0.0), r});
    bumps.push_back({cplx(0.0, -(cfg.half_side - 1.5 * r)), r});
  }
  const BumpBoundResult res = bump_bound(beurling_kernel(), omega, bumps);
  const std::filesystem::path dir(cfg.out);
  CsvWriter csv(dir / "bump_bound.csv", "center_re,center_im,radius,sup",
                cfg.hash());
  for (const auto& e : res.per_ball)
    csv.row({fmt(e.center.real()), fmt(e.center.imag()), fmt(e.radius),
             fmt(e.sup)});
  json summary;
  summary["overall_sup"] = res.overall_sup;
  summary["spearman_vs_inverse_radius"] = res.spearman_vs_inverse_radius;
  summary["upward_trend"] = res.upward_trend;
  write_json(dir / "bump_bound.json", summary, cfg);
  return res.upward_trend ? kExitMath : kExitOk;
}

int cmd_commutator(const ExperimentConfig& cfg) {
  const std::vector<int> ns =
      cfg.n_list.empty() ? std::vector<int>{cfg.n, 2 * cfg.n} : cfg.n_list;
  const std::filesystem::path dir(cfg.out);
  CsvWriter csv(dir / "commutator.csv", "N,log_lipschitz_constant", cfg.hash());
  const double d = 2.0;  // diameter of the unit disk target
  for (int n : ns) {
    const TorusGrid g = make_grid(n, cfg.side);
    const Field mu = plateau_bump(g, 0.5, 0.0, 1.0, 1);
    const Field chi = disk_indicator(g, 1.0, 0.0, 1.0);
    const Field v = commutator(mu, chi);
    const int coarse = 64;
    const int stride = n / coarse;
    double c = 0.0;
    for (int i = 0; i < 60; ++i) {
      std::mt19937_64 rng(cfg.seed + 100 + i);
      std::uniform_int_distribution<int> pick(0, coarse - 1);
      const int a1 = pick(rng) * stride, b1 = pick(rng) * stride;
      const int a2 = pick(rng) * stride, b2 = pick(rng) * stride;
      const cplx z1 = g.point(a1, b1), z2 = g.point(a2, b2);
      if (std::abs(std::abs(z1) - 1.0) < 0.1) continue;
      if (std::abs(std::abs(z2) - 1.0) < 0.1) continue;
      if (std::abs(z1) > 1.8 || std::abs(z2) > 1.8) continue;
      const double dist = std::abs(z1 - z2);
      if (dist < 1e-9) continue;
      c = std::max(c, std::abs(v.at(a1, b1) - v.at(a2, b2)) /
                          (dist * (1.0 + std::log(std::max(d / dist, 1.0)))));
    }
    csv.row({std::to_string(n), fmt(c)});
  }
  return kExitOk;
}

int cmd_decomposition_check(const ExperimentConfig& cfg) {
  const TorusGrid g = make_grid(cfg.n, cfg.side);
  const DomainMask disk = DomainMask::disk(g, 0.0, cfg.half_side);
  const Field f = random_smooth_bump_field(g, 0.9, cfg.seed + 1);
  const double fsup = lp_norm(f, std::numeric_limits<double>::infinity());
  const CZKernelSpec kernel = beurling_kernel();
  const std::filesystem::path dir(cfg.out);
  CsvWriter csv(dir / "decomposition_check.csv", "pair,reconstruction_error",
                cfg.hash());
  std::mt19937_64 rng(cfg.seed + 2);
  std::uniform_int_distribution<std::size_t> pick(
      0, disk.core_indices().size() - 1);
  double max_err = 0.0;
  int done = 0;
  while (done < cfg.pairs) {
    const std::size_t i = disk.core_indices()[pick(rng)];
    const std::size_t j = disk.core_indices()[pick(rng)];
    if (i == j) continue;
    const MeyerTerms t = meyer_decomposition(
        kernel, f, disk,
        {static_cast<int>(i) / g.n, static_cast<int>(i) % g.n},
        {static_cast<int>(j) / g.n, static_cast<int>(j) % g.n});
    const double err = std::abs(t.sum() - t.lhs);
    csv.row({std::to_string(done), fmt(err)});
    max_err = std::max(max_err, err);
    ++done;
  }
  if (max_err > 1e-6 * fsup) {
    std::fprintf(stderr, "{\"error\": \"decomposition identity violated\"}\n");
    return kExitMath;
  }
  return kExitOk;
}

void load_config_file(const std::string& path, ExperimentConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad config JSON: ") + e.what());
  }
  if (j.contains("experiment")) cfg.experiment = j["experiment"];
  if (j.contains("grid")) {
    if (j["grid"].contains("N")) cfg.n = j["grid"]["N"];
    if (j["grid"].contains("L")) cfg.side = j["grid"]["L"];
  }
  if (j.contains("mu")) cfg.mu = j["mu"];
  if (j.contains("spaces"))
    cfg.spaces = j["spaces"].get<std::vector<std::string>>();
  if (j.contains("s")) cfg.s = j["s"];
  if (j.contains("p")) cfg.p = j["p"];
  if (j.contains("q")) cfg.q = j["q"];
  if (j.contains("tol")) cfg.tol = j["tol"];
  if (j.contains("max_iter")) cfg.max_iter = j["max_iter"];
  if (j.contains("seed")) cfg.seed = j["seed"];
  if (j.contains("out")) cfg.out = j["out"];
  if (j.contains("pgm")) cfg.pgm = j["pgm"];
  if (j.contains("p_list")) cfg.p_list = j["p_list"].get<std::vector<double>>();
  if (j.contains("N_list")) cfg.n_list = j["N_list"].get<std::vector<int>>();
  if (j.contains("radii")) cfg.radii = j["radii"].get<std::vector<double>>();
  if (j.contains("domain")) cfg.domain = j["domain"];
  if (j.contains("f")) cfg.function_id = j["f"];
  if (j.contains("space")) cfg.space = j["space"];
  if (j.contains("half_side")) cfg.half_side = j["half_side"];
  if (j.contains("pairs")) cfg.pairs = j["pairs"];
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Beltrami-equation and singular-integral experiments"};
  app.require_subcommand(1);

  ExperimentConfig cfg;
  std::string config_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file (flags override)");
    sub->add_option("--N", cfg.n, "grid points per axis (power of two)");
    sub->add_option("--L", cfg.side, "torus side length");
    sub->add_option("--seed", cfg.seed, "RNG seed");
    sub->add_option("--out", cfg.out, "output directory");
    sub->add_option("--tol", cfg.tol, "solver tolerance");
    sub->add_option("--max-iter", cfg.max_iter, "solver iteration cap");
    sub->add_flag("--pgm", cfg.pgm, "dump grayscale images of |field|");
  };

  CLI::App* solve = app.add_subcommand("solve", "solve the coefficient equation");
  add_common(solve);
  solve->add_option("--mu", cfg.mu, "coefficient spec");

  CLI::App* transfer = app.add_subcommand(
      "regularity-transfer", "norm ratios of solution vs coefficient across N");
  add_common(transfer);
  transfer->add_option("--mu", cfg.mu, "coefficient spec (smooth generators)");
  transfer->add_option("--spaces", cfg.spaces, "space triples s:p:q")
      ->delimiter(',');
  transfer->add_option("--N-list", cfg.n_list, "grid sizes")->delimiter(',');

  CLI::App* corner = app.add_subcommand("corner",
                                        "rectangle gradient integrability scan");
  add_common(corner);
  corner->add_option("--p", cfg.p_list, "exponent list")->delimiter(',');
  corner->add_option("--N-list", cfg.n_list, "grid sizes")->delimiter(',');
  corner->add_option("--half-side", cfg.half_side, "rectangle half side");

  CLI::App* norms = app.add_subcommand("norms", "norm estimator table");
  add_common(norms);
  norms->add_option("--space", cfg.space,
                    "besov|triebel|lorentz|riesz|besov-domain|sobolev-domain");
  norms->add_option("--s", cfg.s, "smoothness (or alpha for riesz)");
  norms->add_option("--p", cfg.p, "integrability p");
  norms->add_option("--q", cfg.q, "integrability q");
  norms->add_option("--f", cfg.function_id, "function id");

  CLI::App* tchi = app.add_subcommand("tchi", "transform of the indicator");
  add_common(tchi);
  tchi->add_option("--domain", cfg.domain, "disk|square|smoothed-square");
  tchi->add_option("--half-side", cfg.half_side, "domain half size");

  CLI::App* bump = app.add_subcommand("bump-bound",
                                      "uniform bound over shrinking bumps");
  add_common(bump);
  bump->add_option("--domain", cfg.domain, "disk|smoothed-square");
  bump->add_option("--half-side", cfg.half_side, "domain half size");
  bump->add_option("--radii", cfg.radii, "bump radii")->delimiter(',');

  CLI::App* comm = app.add_subcommand("commutator",
                                      "log-Lipschitz fit of [mu, B]");
  add_common(comm);
  comm->add_option("--N-list", cfg.n_list, "grid sizes")->delimiter(',');

  CLI::App* decomp = app.add_subcommand("decomposition-check",
                                        "difference decomposition identity");
  add_common(decomp);
  decomp->add_option("--pairs", cfg.pairs, "number of sample pairs");
  decomp->add_option("--half-side", cfg.half_side, "disk radius");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    // Config file first, then re-parse so flags take precedence.
    if (!config_path.empty()) {
      load_config_file(config_path, cfg);
      try {
        app.clear();
        app.parse(argc, argv);
      } catch (const CLI::ParseError&) {
        return kExitUsage;
      }
    }
    CLI::App* sub = app.get_subcommands().front();
    cfg.experiment = sub->get_name();

    DirLock lock{std::filesystem::path(cfg.out)};
    std::ofstream cfg_out(std::filesystem::path(cfg.out) / "config.json");
    cfg_out << cfg.to_json().dump(2) << "\n";

    if (sub == solve) return cmd_solve(cfg);
    if (sub == transfer) return cmd_regularity_transfer(cfg);
    if (sub == corner) return cmd_corner(cfg);
    if (sub == norms) return cmd_norms(cfg);
    if (sub == tchi) return cmd_tchi(cfg);
    if (sub == bump) return cmd_bump_bound(cfg);
    if (sub == comm) return cmd_commutator(cfg);
    if (sub == decomp) return cmd_decomposition_check(cfg);
    return kExitUsage;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "{\"error\": \"%s\"}\n", e.what());
    return kExitUsage;
  } catch (const MathError& e) {
    std::fprintf(stderr, "{\"error\": \"%s\"}\n", e.what());
    return kExitMath;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "{\"error\": \"%s\"}\n", e.what());
    return kExitMath;
  }
}
