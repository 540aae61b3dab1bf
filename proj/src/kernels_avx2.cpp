#include "entrobound/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define ENTROBOUND_HAVE_AVX2_BUILD 1
#include <immintrin.h>
#endif

#include <cfloat>
#include <cmath>
#include <cstdint>

namespace entrobound::kernels::avx2 {

#ifdef ENTROBOUND_HAVE_AVX2_BUILD

bool available() { return __builtin_cpu_supports("avx2") != 0; }

namespace {

// log(x) for positive finite x, 4 lanes. Range reduction to m in
// [sqrt(1/2), sqrt(2)), then 2*atanh((m-1)/(m+1)) via its odd series.
// Worst-case error is a few ulp, which the equivalence tests pin down.
inline __m256d vlog(__m256d x) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d tiny_lim = _mm256_set1_pd(DBL_MIN);

  // rescale denormals so the exponent-field extraction below is valid
  const __m256d is_tiny = _mm256_cmp_pd(x, tiny_lim, _CMP_LT_OQ);
  const __m256d scaled = _mm256_mul_pd(x, _mm256_set1_pd(0x1.0p54));
  x = _mm256_blendv_pd(x, scaled, is_tiny);
  __m256d e_off = _mm256_and_pd(is_tiny, _mm256_set1_pd(54.0));

  const __m256i bits = _mm256_castpd_si256(x);
  const __m256i exp_field =
      _mm256_srli_epi64(_mm256_and_si256(bits, _mm256_set1_epi64x(0x7FF0000000000000LL)), 52);
  // mantissa remapped into [0.5, 1)
  const __m256i mant_bits = _mm256_or_si256(
      _mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL)),
      _mm256_set1_epi64x(0x3FE0000000000000LL));
  __m256d m = _mm256_castsi256_pd(mant_bits);

  // exponent as double: e = exp_field - 1022 (int32 lanes 0,2,4,6 hold it)
  const __m256i e_i = _mm256_sub_epi64(exp_field, _mm256_set1_epi64x(1022));
  // convert small signed 64-bit ints to double via per-lane shuffle trick
  alignas(32) std::int64_t etmp[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(etmp), e_i);
  __m256d e = _mm256_set_pd(static_cast<double>(etmp[3]), static_cast<double>(etmp[2]),
                            static_cast<double>(etmp[1]), static_cast<double>(etmp[0]));
  e = _mm256_sub_pd(e, e_off);

  // if m < sqrt(1/2): m *= 2, e -= 1
  const __m256d sqrt_half = _mm256_set1_pd(0.70710678118654752440);
  const __m256d lt = _mm256_cmp_pd(m, sqrt_half, _CMP_LT_OQ);
  m = _mm256_blendv_pd(m, _mm256_add_pd(m, m), lt);
  e = _mm256_sub_pd(e, _mm256_and_pd(lt, one));

  const __m256d t = _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
  const __m256d z = _mm256_mul_pd(t, t);

  // atanh(t)/t - 1 = z/3 + z^2/5 + ... ; |t| <= 0.1716 so eight terms suffice
  __m256d p = _mm256_set1_pd(1.0 / 17.0);
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 15.0));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 13.0));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 11.0));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 9.0));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 7.0));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 5.0));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 3.0));

  const __m256d two_t = _mm256_add_pd(t, t);
  // log m = 2t + 2t*z*p
  __m256d logm = _mm256_fmadd_pd(_mm256_mul_pd(two_t, z), p, two_t);

  // split ln2 so that e*ln2_hi is exact for |e| < 2^31
  const __m256d ln2_hi = _mm256_set1_pd(6.93145751953125e-1);
  const __m256d ln2_lo = _mm256_set1_pd(1.42860682030941723212e-6);
  __m256d r = _mm256_fmadd_pd(e, ln2_lo, logm);
  r = _mm256_fmadd_pd(e, ln2_hi, r);
  return r;
}

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(lo) + _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
}

template <bool Squared>
LogSumResult weighted_log_reduce(const double* w, const double* x, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  __m256d acc = zero;
  bool invalid = false;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d wv = _mm256_loadu_pd(w + i);
    __m256d xv = _mm256_loadu_pd(x + i);
    const __m256d active = _mm256_cmp_pd(wv, zero, _CMP_NEQ_OQ);
    const __m256d bad =
        _mm256_and_pd(active, _mm256_cmp_pd(xv, zero, _CMP_LE_OQ));
    if (_mm256_movemask_pd(bad) != 0) invalid = true;
    // neutralize inactive/bad lanes before taking the log
    const __m256d usable = _mm256_andnot_pd(bad, active);
    xv = _mm256_blendv_pd(_mm256_set1_pd(1.0), xv, usable);
    __m256d l = vlog(xv);
    if constexpr (Squared) l = _mm256_mul_pd(l, l);
    acc = _mm256_fmadd_pd(_mm256_and_pd(wv, usable), l, acc);
  }
  LogSumResult r;
  r.value = hsum(acc);
  r.invalid = invalid;
  const auto tail = Squared ? scalar::weighted_log_sq_sum(w + i, x + i, n - i)
                            : scalar::weighted_log_sum(w + i, x + i, n - i);
  r.value += tail.value;
  r.invalid = r.invalid || tail.invalid;
  return r;
}

}  // namespace

LogSumResult weighted_log_sum(const double* w, const double* x, std::size_t n) {
  return weighted_log_reduce<false>(w, x, n);
}

LogSumResult weighted_log_sq_sum(const double* w, const double* x, std::size_t n) {
  return weighted_log_reduce<true>(w, x, n);
}

double half_l1_diff(const double* p, const double* q, std::size_t n) {
  const __m256d signmask = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(p + i), _mm256_loadu_pd(q + i));
    acc = _mm256_add_pd(acc, _mm256_andnot_pd(signmask, d));
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

#else  // !ENTROBOUND_HAVE_AVX2_BUILD

bool available() { return false; }

LogSumResult weighted_log_sum(const double* w, const double* x, std::size_t n) {
  return scalar::weighted_log_sum(w, x, n);
}

LogSumResult weighted_log_sq_sum(const double* w, const double* x, std::size_t n) {
  return scalar::weighted_log_sq_sum(w, x, n);
}

double half_l1_diff(const double* p, const double* q, std::size_t n) {
  return scalar::half_l1_diff(p, q, n);
}

#endif

}  // namespace entrobound::kernels::avx2
