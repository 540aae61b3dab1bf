#include "entrobound/kernels.hpp"

#include <cmath>

namespace entrobound::kernels::scalar {

LogSumResult weighted_log_sum(const double* w, const double* x, std::size_t n) {
  LogSumResult r;
  for (std::size_t i = 0; i < n; ++i) {
    if (w[i] == 0.0) continue;
    if (x[i] <= 0.0) {
      r.invalid = true;
      continue;
    }
    r.value += w[i] * std::log(x[i]);
  }
  return r;
}

LogSumResult weighted_log_sq_sum(const double* w, const double* x, std::size_t n) {
  LogSumResult r;
  for (std::size_t i = 0; i < n; ++i) {
    if (w[i] == 0.0) continue;
    if (x[i] <= 0.0) {
      r.invalid = true;
      continue;
    }
    const double l = std::log(x[i]);
    r.value += w[i] * l * l;
  }
  return r;
}

double half_l1_diff(const double* p, const double* q, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

}  // namespace entrobound::kernels::scalar
