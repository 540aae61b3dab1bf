#pragma once

#include <cstddef>
#include <span>

// Reduction kernels for the entropic primitives. Every kernel has a scalar
// reference implementation and, on x86-64 with AVX2, a vectorized variant
// selected at runtime. The two backends agree to a few ulp; the scalar
// kernels are the reference in equivalence tests.

namespace entrobound::kernels {

struct LogSumResult {
  double value = 0.0;
  // set when some x[i] <= 0 has w[i] != 0, i.e. log is undefined there
  bool invalid = false;
};

// sum_i w[i] * log(x[i]), terms with w[i] == 0 contribute 0
LogSumResult weighted_log_sum(std::span<const double> w, std::span<const double> x);

// sum_i w[i] * log(x[i])^2, same zero-weight convention
LogSumResult weighted_log_sq_sum(std::span<const double> w, std::span<const double> x);

// 0.5 * sum_i |p[i] - q[i]|
double half_l1_diff(std::span<const double> p, std::span<const double> q);

namespace scalar {
LogSumResult weighted_log_sum(const double* w, const double* x, std::size_t n);
LogSumResult weighted_log_sq_sum(const double* w, const double* x, std::size_t n);
double half_l1_diff(const double* p, const double* q, std::size_t n);
}  // namespace scalar

namespace avx2 {
bool available();
LogSumResult weighted_log_sum(const double* w, const double* x, std::size_t n);
LogSumResult weighted_log_sq_sum(const double* w, const double* x, std::size_t n);
double half_l1_diff(const double* p, const double* q, std::size_t n);
}  // namespace avx2

enum class Backend { Auto, Scalar, Avx2 };

// Overrides runtime dispatch (tests, benchmarking). Backend::Auto restores
// CPU detection. Not thread-safe against concurrent kernel calls.
void force_backend(Backend b);
const char* active_backend();

}  // namespace entrobound::kernels
