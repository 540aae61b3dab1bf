#include "entrobound/apps.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "entrobound/kernels.hpp"
#include "entrobound/mbound.hpp"

namespace entrobound::apps {

namespace {

constexpr double kGoldenRatio = 0.61803398874989484820;

double kl_raw(std::span<const double> p, std::span<const double> q) {
  const auto pp = kernels::weighted_log_sum(p, p);
  const auto pq = kernels::weighted_log_sum(p, q);
  if (pq.invalid) return core::kInfinity;
  return pp.value - pq.value;
}

}  // namespace

Channel::Channel(const std::vector<std::vector<double>>& matrix) {
  if (matrix.empty()) throw std::invalid_argument("empty channel matrix");
  const std::size_t cols = matrix.front().size();
  rows_.reserve(matrix.size());
  for (const auto& row : matrix) {
    if (row.size() != cols) throw std::invalid_argument("ragged channel matrix");
    rows_.emplace_back(row);  // validates row-stochasticity
  }
}

double blahut_arimoto(const Channel& ch, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  const int nx = ch.input_dim();
  const int ny = ch.output_dim();
  std::vector<double> p(static_cast<std::size_t>(nx), 1.0 / nx);
  std::vector<double> q(static_cast<std::size_t>(ny));
  std::vector<double> dkl(static_cast<std::size_t>(nx));

  for (long iter = 0; iter < 2000000; ++iter) {
    std::fill(q.begin(), q.end(), 0.0);
    for (int x = 0; x < nx; ++x) {
      const auto row = ch.row(x).probs();
      for (int y = 0; y < ny; ++y) q[static_cast<std::size_t>(y)] += p[static_cast<std::size_t>(x)] * row[static_cast<std::size_t>(y)];
    }
    double lower = 0.0, upper = -core::kInfinity;
    for (int x = 0; x < nx; ++x) {
      dkl[static_cast<std::size_t>(x)] = kl_raw(ch.row(x).probs(), q);
      lower += p[static_cast<std::size_t>(x)] * dkl[static_cast<std::size_t>(x)];
      upper = std::max(upper, dkl[static_cast<std::size_t>(x)]);
    }
    if (upper - lower < tol) return 0.5 * (upper + lower);
    double z = 0.0;
    for (int x = 0; x < nx; ++x) {
      p[static_cast<std::size_t>(x)] *= std::exp(dkl[static_cast<std::size_t>(x)] - upper);
      z += p[static_cast<std::size_t>(x)];
    }
    for (double& v : p) v /= z;
  }
  throw std::runtime_error("blahut_arimoto failed to converge");
}

double entropy_gap_bound(double s_max, double s_min, int d) {
  if (d < 2) throw std::invalid_argument("d must be >= 2");
  const double ld = std::log(static_cast<double>(d));
  if (s_min < -1e-12 || s_max < s_min - 1e-12 || s_max > ld + 1e-9)
    throw std::invalid_argument("need 0 <= s_min <= s_max <= log d");
  const double gap = std::max(0.0, s_max - s_min);
  const double den = std::log(d - 1.0) * std::log(d - 1.0) + 4.0;
  return gap * gap / (2.0 * den) - gap * gap * gap / (3.0 * den * den);
}

CapacityBound capacity_lower_bound(const Channel& ch) {
  if (ch.output_dim() < 2) throw std::invalid_argument("output dimension must be >= 2");
  CapacityBound cb;
  cb.s_max = -core::kInfinity;
  cb.s_min = core::kInfinity;
  for (int x = 0; x < ch.input_dim(); ++x) {
    const double s = core::shannon_entropy(ch.row(x));
    cb.s_max = std::max(cb.s_max, s);
    cb.s_min = std::min(cb.s_min, s);
  }
  cb.bound = entropy_gap_bound(cb.s_max, cb.s_min, ch.output_dim());
  cb.conjectural_bound =
      bound::compute_M(ch.output_dim(), -(cb.s_max - cb.s_min) / 2.0).value;
  return cb;
}

ChernoffResult chernoff(const core::ProbVector& p, const core::ProbVector& q, int d) {
  if (p.dim() != q.dim()) throw std::invalid_argument("dimension mismatch");
  if (d == 0) d = p.dim();
  if (d < p.dim()) throw std::invalid_argument("d below state dimension");

  // log sum_i p_i^s q_i^(1-s) over the common support; log-convex in s
  const auto log_hellinger = [&](double s) {
    double sum = 0.0;
    for (int i = 0; i < p.dim(); ++i) {
      if (p[i] > 0.0 && q[i] > 0.0)
        sum += std::exp(s * std::log(p[i]) + (1.0 - s) * std::log(q[i]));
    }
    return sum > 0.0 ? std::log(sum) : -core::kInfinity;
  };

  double a = 0.0, b = 1.0;
  double c = b - kGoldenRatio * (b - a);
  double e = a + kGoldenRatio * (b - a);
  double fc = log_hellinger(c), fe = log_hellinger(e);
  while (b - a > 1e-12) {
    if (fc < fe) {
      b = e;
      e = c;
      fe = fc;
      c = b - kGoldenRatio * (b - a);
      fc = log_hellinger(c);
    } else {
      a = c;
      c = e;
      fc = fe;
      e = a + kGoldenRatio * (b - a);
      fe = log_hellinger(e);
    }
  }
  // support-boundary minima sit at the endpoints
  const double best = std::min({log_hellinger(0.5 * (a + b)), log_hellinger(0.0),
                                log_hellinger(1.0)});

  ChernoffResult res;
  res.xi = std::isinf(best) ? core::kInfinity : std::max(0.0, -best);
  const double gap = std::abs(core::shannon_entropy(p) - core::shannon_entropy(q));
  res.lower_bound = entropy_gap_bound(gap, 0.0, d);
  return res;
}

WrongCodeResult wrong_code_penalty(const core::ProbVector& p, const core::ProbVector& q,
                                   double alphabet) {
  if (p.dim() != q.dim()) throw std::invalid_argument("dimension mismatch");
  if (!(alphabet > 1.0)) throw std::invalid_argument("alphabet size must exceed 1");
  const double logD = std::log(alphabet);
  const int d = p.dim();
  const double ld = std::log(static_cast<double>(d));

  WrongCodeResult res;
  res.penalty = core::relative_entropy(p, q) / logD;
  const double delta = (core::shannon_entropy(p) - core::shannon_entropy(q)) / logD;
  const double dnats = std::clamp(delta * logD, -ld, ld);
  res.lower_bound = bound::compute_M(d, dnats).value / logD;
  if (delta >= 0.0) {
    const double den = std::log(d - 1.0) * std::log(d - 1.0) + 4.0;
    res.quad_bound = 2.0 * delta * delta * logD / den;
  }
  return res;
}

double universal_exponent_lb(double rate, const core::ProbVector& p) {
  const int d = p.dim();
  const double ld = std::log(static_cast<double>(d));
  const double s = core::shannon_entropy(p);
  if (!(rate > s)) throw std::invalid_argument("rate must exceed S(p)");
  if (rate > ld + 1e-9) throw std::invalid_argument("rate exceeds log d");
  return bound::compute_M(d, std::min(rate, ld) - s).value;
}

ProcessReport stepwise_process(const core::ProbVector& rho_i,
                               const core::ProbVector& rho_f, int k,
                               std::vector<double> temps) {
  if (rho_i.dim() != rho_f.dim()) throw std::invalid_argument("dimension mismatch");
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (static_cast<int>(temps.size()) != k)
    throw std::invalid_argument("temps must have length k");
  for (double t : temps)
    if (!(t > 0.0)) throw std::invalid_argument("temperatures must be positive");
  if (!rho_f.full_support())
    throw std::invalid_argument("rho_f must have full support");

  const int d = rho_i.dim();
  ProcessReport rep;
  rep.k = k;
  rep.temps = std::move(temps);
  rep.path.reserve(static_cast<std::size_t>(k) + 1);
  rep.path.push_back(rho_i);
  for (int j = 1; j <= k; ++j) {
    const double t = static_cast<double>(j) / k;
    std::vector<double> mix(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i)
      mix[static_cast<std::size_t>(i)] = (1.0 - t) * rho_i[i] + t * rho_f[i];
    rep.path.emplace_back(mix);
  }

  for (int j = 1; j <= k; ++j) {
    const auto& prev = rep.path[static_cast<std::size_t>(j - 1)];
    const auto& cur = rep.path[static_cast<std::size_t>(j)];
    // dQ_j / T_j = tr{(rho_j - rho_{j-1})(-log rho_j)} in entropic units
    std::vector<double> w(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) w[static_cast<std::size_t>(i)] = prev[i] - cur[i];
    rep.clausius_lhs += kernels::weighted_log_sum(w, cur.probs()).value;
    rep.rel_ent_sum += core::relative_entropy(prev, cur);
  }

  rep.delta_S = core::shannon_entropy(rho_f) - core::shannon_entropy(rho_i);
  const double ld = std::log(static_cast<double>(d));
  rep.bound_convexity =
      k * bound::compute_M(d, std::clamp(-rep.delta_S / k, -ld, ld)).value;
  rep.bound_quadratic = rep.delta_S * rep.delta_S / (3.0 * k * ld * ld);
  const double l1 = 2.0 * core::trace_distance(rho_i, rho_f);
  rep.bound_pinsker = l1 * l1 / (2.0 * k);
  rep.upper_envelope =
      (core::relative_entropy(rho_f, rho_i) + core::relative_entropy(rho_i, rho_f)) / k;
  rep.w_waste_lb =
      *std::min_element(rep.temps.begin(), rep.temps.end()) * rep.rel_ent_sum;
  return rep;
}

WorkResult extractable_work(const core::ProbVector& rho_i,
                            const std::vector<double>& levels, double temperature) {
  if (static_cast<int>(levels.size()) != rho_i.dim())
    throw std::invalid_argument("levels/state dimension mismatch");
  const core::ThermalSystem sys(levels, temperature);
  const core::ProbVector rho_f = core::thermal_state(sys);
  const int d = rho_i.dim();
  const double ld = std::log(static_cast<double>(d));

  WorkResult res;
  const double div = core::relative_entropy(rho_i, rho_f);
  res.exact = temperature * div;

  if (std::isfinite(res.exact) && std::isfinite(temperature)) {
    // cross-check against the free-energy difference F(rho_i) - F(rho_f)
    double ei = 0.0, ef = 0.0;
    for (int i = 0; i < d; ++i) {
      ei += levels[static_cast<std::size_t>(i)] * rho_i[i];
      ef += levels[static_cast<std::size_t>(i)] * rho_f[i];
    }
    const double fi = ei - temperature * core::shannon_entropy(rho_i);
    const double ff = ef - temperature * core::shannon_entropy(rho_f);
    if (std::abs(res.exact - (fi - ff)) > 1e-9 * std::max(1.0, std::abs(res.exact)))
      throw std::runtime_error("free-energy identity violated");
  }

  const double ds = core::shannon_entropy(rho_f) - core::shannon_entropy(rho_i);
  res.lower_bound =
      temperature * bound::compute_M(d, std::clamp(-ds, -ld, ld)).value;
  return res;
}

}  // namespace entrobound::apps
