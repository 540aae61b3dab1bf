#include "entrobound/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "entrobound/mbound.hpp"

namespace entrobound::oracle {

namespace {

struct SplitMix64 {
  std::uint64_t state;

  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // uniform in (0, 1]
  double uniform_pos() { return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53; }
  // uniform in [0, 1)
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// counter-based substream: sample k of a run does not depend on how many
// draws earlier samples consumed
SplitMix64 substream(std::uint64_t seed, std::uint64_t counter) {
  SplitMix64 g{seed ^ (0xD1B54A32D192ED03ULL * (counter + 1))};
  g.next();
  g.next();
  return g;
}

std::vector<double> dirichlet_raw(SplitMix64& g, int d) {
  std::vector<double> v(static_cast<std::size_t>(d));
  double sum = 0.0;
  for (double& x : v) {
    x = -std::log(g.uniform_pos());
    sum += x;
  }
  for (double& x : v) x /= sum;
  return v;
}

std::string describe(const char* what, int d, double delta, double gap) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%s d=%d delta=%.9g gap=%.3e", what, d, delta, gap);
  return buf;
}

// mixture sigma(t) = (1-t) base + t target, entropy-matched to s_target by
// bisection; entropy is continuous in t and the bracket endpoints straddle
// the target by construction
core::ProbVector match_entropy(const std::vector<double>& base,
                               const std::vector<double>& target, double s_target,
                               bool* ok) {
  const std::size_t d = base.size();
  std::vector<double> mix(d);
  const auto state_at = [&](double t) {
    for (std::size_t i = 0; i < d; ++i) mix[i] = (1.0 - t) * base[i] + t * target[i];
    return core::ProbVector(mix);
  };
  double lo = 0.0, hi = 1.0;
  core::ProbVector result = state_at(0.0);
  const double s_lo = core::shannon_entropy(result);
  const double s_hi = core::shannon_entropy(state_at(1.0));
  if (!((s_target - s_lo) * (s_target - s_hi) <= 0.0)) {
    *ok = false;
    return result;
  }
  for (int it = 0; it < 80 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    const core::ProbVector st = state_at(mid);
    const double s = core::shannon_entropy(st);
    if ((s - s_target) * (s_lo - s_target) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  result = state_at(0.5 * (lo + hi));
  *ok = std::abs(core::shannon_entropy(result) - s_target) <= 1e-9;
  return result;
}

}  // namespace

std::vector<core::ProbVector> sample_simplex(int d, int n, std::uint64_t seed) {
  if (d < 1 || n < 1) throw std::invalid_argument("need d >= 1 and n >= 1");
  std::vector<core::ProbVector> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    SplitMix64 g = substream(seed, static_cast<std::uint64_t>(k));
    out.emplace_back(dirichlet_raw(g, d));
  }
  return out;
}

OracleReport verify_M_bound(int d, int n, std::uint64_t seed) {
  if (d < 2) throw std::invalid_argument("d must be >= 2");
  const double ld = std::log(static_cast<double>(d));
  OracleReport rep;
  rep.seed = seed;
  rep.min_gap = core::kInfinity;

  std::vector<double> uniform(static_cast<std::size_t>(d), 1.0 / d);
  for (int k = 0; k < n; ++k) {
    SplitMix64 g = substream(seed, static_cast<std::uint64_t>(k));

    std::vector<double> rho_raw = dirichlet_raw(g, d);
    while (*std::min_element(rho_raw.begin(), rho_raw.end()) <= 0.0)
      rho_raw = dirichlet_raw(g, d);
    const core::ProbVector rho(rho_raw);
    const double s_rho = core::shannon_entropy(rho);

    const std::vector<double> sigma0 = dirichlet_raw(g, d);
    const double s_sigma0 =
        core::shannon_entropy(core::ProbVector(sigma0));

    // draw targets until the required sigma entropy is representable
    core::ProbVector sigma = rho;
    bool matched = false;
    for (int attempt = 0; attempt < 64 && !matched; ++attempt) {
      const double delta_target = -ld + g.uniform() * (0.99 * ld + ld);
      const double s_target = s_rho + delta_target;
      if (s_target < 1e-9 || s_target > ld - 1e-9) {
        ++rep.resamples;
        continue;
      }
      std::vector<double> point(static_cast<std::size_t>(d), 0.0);
      point[static_cast<std::size_t>(
          std::max_element(sigma0.begin(), sigma0.end()) - sigma0.begin())] = 1.0;
      const auto& target = (s_target >= s_sigma0) ? uniform : point;
      sigma = match_entropy(sigma0, target, s_target, &matched);
      if (!matched) ++rep.resamples;
    }
    if (!matched) continue;  // counted above; structurally unreachable targets

    const double delta = core::shannon_entropy(sigma) - s_rho;
    const double lhs = core::relative_entropy(sigma, rho);
    const double rhs = bound::compute_M(d, std::clamp(delta, -ld, ld)).value;
    const double gap = lhs - rhs;
    ++rep.samples;
    if (gap < rep.min_gap) {
      rep.min_gap = gap;
      rep.worst_case = describe("M-bound", d, delta, gap);
    }
    if (gap < -1e-7) ++rep.violations;
  }
  return rep;
}

OracleReport verify_variance_bound(int d, int n, std::uint64_t seed) {
  if (d < 2) throw std::invalid_argument("d must be >= 2");
  const auto nb = bound::compute_N(d);
  OracleReport rep;
  rep.seed = seed;
  rep.min_gap = core::kInfinity;

  for (int k = 0; k < n; ++k) {
    SplitMix64 g = substream(seed, static_cast<std::uint64_t>(k));
    const core::ProbVector p(dirichlet_raw(g, d));
    const double gap = nb.n_value - core::surprisal_variance(p);
    ++rep.samples;
    if (gap < rep.min_gap) {
      rep.min_gap = gap;
      rep.worst_case = describe("variance", d, 0.0, gap);
    }
    if (gap < -1e-9) ++rep.violations;
  }

  // the optimal spectrum must achieve the bound
  const core::ProbVector opt = core::ProbVector::two_level(d, nb.r_d);
  const double inj_gap = nb.n_value - core::surprisal_variance(opt);
  ++rep.samples;
  if (std::abs(inj_gap) > 1e-10) ++rep.violations;
  if (inj_gap < rep.min_gap) {
    rep.min_gap = inj_gap;
    rep.worst_case = describe("variance-injected", d, 0.0, inj_gap);
  }
  return rep;
}

StationarityResidual check_stationarity(int d, double delta) {
  const double ld = std::log(static_cast<double>(d));
  if (!(std::abs(delta) > 1e-6) || std::abs(delta) >= ld)
    throw std::invalid_argument("delta must be interior with |delta| > 1e-6");
  const auto res = bound::compute_M(d, delta);
  const double s = res.s_opt, r = res.r_opt;
  const double smax = (d - 1.0) / d;

  StationarityResidual out;
  out.constraint_residual =
      core::binary_entropy(s) - core::binary_entropy(r) + (s - r) * std::log(d - 1.0) -
      delta;
  if (s < 1e-9 || r < 1e-9 || s > smax - 1e-9 || r > smax - 1e-9) {
    out.boundary = true;
    return out;
  }
  const double D = std::log(d - 1.0);
  const double lr = std::log((1.0 - r) / r);
  const double ls = std::log((1.0 - s) / s);
  const double a = lr - ls;
  const double b = D + lr;
  const double c = s / r - (1.0 - s) / (1.0 - r);
  const double e = D + ls;
  const double f = a * b - c * e;
  out.f_residual =
      f / ((1.0 + std::abs(a)) * (1.0 + std::abs(b)) +
           (1.0 + std::abs(c)) * (1.0 + std::abs(e)));
  return out;
}

ConjectureScan conjecture_scan(int d, int grid_n) {
  if (d < 2 || grid_n < 1) throw std::invalid_argument("need d >= 2, grid_n >= 1");
  const double ld = std::log(static_cast<double>(d));
  ConjectureScan scan;
  scan.min_diff = core::kInfinity;
  for (int i = 1; i <= grid_n; ++i) {
    const double delta = ld * i / (grid_n + 1.0);
    const double diff =
        bound::compute_M(d, delta).value - bound::compute_M(d, -delta).value;
    if (diff < scan.min_diff) {
      scan.min_diff = diff;
      scan.argmin_delta = delta;
    }
  }
  return scan;
}

}  // namespace entrobound::oracle
