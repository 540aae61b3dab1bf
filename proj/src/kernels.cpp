#include "entrobound/kernels.hpp"

#include <atomic>

namespace entrobound::kernels {

namespace {

std::atomic<Backend> g_forced{Backend::Auto};

inline bool use_avx2() {
  const Backend b = g_forced.load(std::memory_order_relaxed);
  if (b == Backend::Scalar) return false;
  if (b == Backend::Avx2) return true;
  static const bool detected = avx2::available();
  return detected;
}

}  // namespace

void force_backend(Backend b) { g_forced.store(b, std::memory_order_relaxed); }

const char* active_backend() { return use_avx2() ? "avx2" : "scalar"; }

LogSumResult weighted_log_sum(std::span<const double> w, std::span<const double> x) {
  if (use_avx2()) return avx2::weighted_log_sum(w.data(), x.data(), w.size());
  return scalar::weighted_log_sum(w.data(), x.data(), w.size());
}

LogSumResult weighted_log_sq_sum(std::span<const double> w, std::span<const double> x) {
  if (use_avx2()) return avx2::weighted_log_sq_sum(w.data(), x.data(), w.size());
  return scalar::weighted_log_sq_sum(w.data(), x.data(), w.size());
}

double half_l1_diff(std::span<const double> p, std::span<const double> q) {
  if (use_avx2()) return avx2::half_l1_diff(p.data(), q.data(), p.size());
  return scalar::half_l1_diff(p.data(), q.data(), p.size());
}

}  // namespace entrobound::kernels
