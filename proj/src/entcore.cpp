#include "entrobound/entcore.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "entrobound/kernels.hpp"

namespace entrobound::core {

namespace {

void check_same_dim(const ProbVector& p, const ProbVector& q) {
  if (p.dim() != q.dim())
    throw std::invalid_argument("dimension mismatch: " + std::to_string(p.dim()) +
                                " vs " + std::to_string(q.dim()));
}

double check_unit_interval(double x, const char* name) {
  if (x < -1e-12 || x > 1.0 + 1e-12)
    throw std::invalid_argument(std::string(name) + " outside [0,1]");
  return std::clamp(x, 0.0, 1.0);
}

}  // namespace

ProbVector::ProbVector(std::vector<double> probs) : p_(std::move(probs)) {
  if (p_.empty()) throw std::invalid_argument("empty probability vector");
  double sum = 0.0;
  for (double& v : p_) {
    if (v < -1e-12) throw std::invalid_argument("negative probability entry");
    if (v < 0.0) v = 0.0;
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("probabilities sum to " + std::to_string(sum));
  for (double& v : p_) v /= sum;
}

ProbVector ProbVector::uniform(int d) {
  if (d < 1) throw std::invalid_argument("dim must be >= 1");
  return ProbVector(std::vector<double>(static_cast<std::size_t>(d), 1.0 / d));
}

ProbVector ProbVector::point_mass(int d, int index) {
  if (d < 1 || index < 0 || index >= d) throw std::invalid_argument("bad point mass");
  std::vector<double> v(static_cast<std::size_t>(d), 0.0);
  v[static_cast<std::size_t>(index)] = 1.0;
  return ProbVector(std::move(v));
}

ProbVector ProbVector::two_level(int d, double s) {
  if (d < 2) throw std::invalid_argument("two_level needs d >= 2");
  s = check_unit_interval(s, "s");
  std::vector<double> v(static_cast<std::size_t>(d), s / (d - 1));
  v[0] = 1.0 - s;
  return ProbVector(std::move(v));
}

bool ProbVector::full_support() const {
  return std::all_of(p_.begin(), p_.end(), [](double v) { return v > 0.0; });
}

ThermalSystem::ThermalSystem(std::vector<double> lv, double temp)
    : levels(std::move(lv)), temperature(temp) {
  if (levels.empty()) throw std::invalid_argument("empty level list");
  if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be positive");
}

double shannon_entropy(const ProbVector& p) {
  const auto r = kernels::weighted_log_sum(p.probs(), p.probs());
  return std::max(0.0, -r.value);
}

double relative_entropy(const ProbVector& p, const ProbVector& q) {
  check_same_dim(p, q);
  const auto pp = kernels::weighted_log_sum(p.probs(), p.probs());
  const auto pq = kernels::weighted_log_sum(p.probs(), q.probs());
  if (pq.invalid) return kInfinity;  // some p_i > 0 with q_i = 0
  return pp.value - pq.value;
}

double binary_entropy(double x) {
  x = check_unit_interval(x, "x");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log(x) - (1.0 - x) * std::log1p(-x);
}

double binary_relative_entropy(double x, double y) {
  x = check_unit_interval(x, "x");
  y = check_unit_interval(y, "y");
  if (x == y) return 0.0;
  if (y == 0.0) return x > 0.0 ? kInfinity : 0.0;
  if (y == 1.0) return x < 1.0 ? kInfinity : 0.0;
  double t = 0.0;
  if (x > 0.0) t += x * std::log(x / y);
  if (x < 1.0) t += (1.0 - x) * std::log((1.0 - x) / (1.0 - y));
  return std::max(0.0, t);
}

double surprisal_variance(const ProbVector& p) {
  const double m1 = kernels::weighted_log_sum(p.probs(), p.probs()).value;
  const double m2 = kernels::weighted_log_sq_sum(p.probs(), p.probs()).value;
  return std::max(0.0, m2 - m1 * m1);
}

double trace_distance(const ProbVector& p, const ProbVector& q) {
  check_same_dim(p, q);
  return kernels::half_l1_diff(p.probs(), q.probs());
}

ProbVector thermal_state(const ThermalSystem& sys) {
  const std::size_t d = sys.levels.size();
  if (std::isinf(sys.temperature))
    return ProbVector::uniform(static_cast<int>(d));
  const double emin = *std::min_element(sys.levels.begin(), sys.levels.end());
  std::vector<double> w(d);
  double z = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    w[i] = std::exp(-(sys.levels[i] - emin) / sys.temperature);
    z += w[i];
  }
  for (double& v : w) v /= z;
  return ProbVector(std::move(w));
}

double heat_capacity(const ThermalSystem& sys) {
  if (sys.levels.size() == 1) return 0.0;
  return surprisal_variance(thermal_state(sys));
}

}  // namespace entrobound::core
