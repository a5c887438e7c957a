// Compiled with -mavx2 -mfma. Only reached through the dispatcher after a
// runtime CPU check.

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qnet/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>

namespace qnet::kernels::avx2 {

namespace {

// (ar + i ai)(br + i bi) for two complex numbers packed per register.
inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d are = _mm256_movedup_pd(a);
  const __m256d aim = _mm256_permute_pd(a, 0xF);
  const __m256d bsw = _mm256_permute_pd(b, 0x5);
  return _mm256_fmaddsub_pd(are, b, _mm256_mul_pd(aim, bsw));
}

inline __m256d load_pair(const cplx* p0, const cplx* p1) {
  const __m128d lo = _mm_loadu_pd(reinterpret_cast<const double*>(p0));
  const __m128d hi = _mm_loadu_pd(reinterpret_cast<const double*>(p1));
  return _mm256_insertf128_pd(_mm256_castpd128_pd256(lo), hi, 1);
}

}  // namespace

void spmv(const CsrView& a, const cplx* x, cplx* y) {
  for (std::size_t r = 0; r < a.rows; ++r) {
    std::int64_t k = a.row_ptr[r];
    const std::int64_t end = a.row_ptr[r + 1];
    __m256d acc = _mm256_setzero_pd();
    for (; k + 1 < end; k += 2) {
      const __m256d v = _mm256_loadu_pd(reinterpret_cast<const double*>(a.values + k));
      const __m256d xv = load_pair(x + a.cols[k], x + a.cols[k + 1]);
      acc = _mm256_add_pd(acc, cmul(v, xv));
    }
    __m128d sum = _mm_add_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
    if (k < end) {
      const cplx t = a.values[k] * x[a.cols[k]];
      sum = _mm_add_pd(sum, _mm_set_pd(t.imag(), t.real()));
    }
    _mm_storeu_pd(reinterpret_cast<double*>(y + r), sum);
  }
}

void lincomb(std::size_t n, const cplx* base, std::span<const double> weights, std::span<const cplx* const> vecs,
             cplx* out) {
  const std::size_t m = 2 * n;
  const auto* b = reinterpret_cast<const double*>(base);
  auto* o = reinterpret_cast<double*>(out);
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    __m256d acc = _mm256_loadu_pd(b + i);
    for (std::size_t j = 0; j < weights.size(); ++j) {
      const auto* v = reinterpret_cast<const double*>(vecs[j]);
      acc = _mm256_fmadd_pd(_mm256_set1_pd(weights[j]), _mm256_loadu_pd(v + i), acc);
    }
    _mm256_storeu_pd(o + i, acc);
  }
  for (; i < m; ++i) {
    double acc = b[i];
    for (std::size_t j = 0; j < weights.size(); ++j) acc = std::fma(weights[j], reinterpret_cast<const double*>(vecs[j])[i], acc);
    o[i] = acc;
  }
}

double scaled_rms(std::size_t n, const cplx* err, const cplx* a, const cplx* b, double atol, double rtol) {
  if (n == 0) return 0.0;
  const std::size_t m = 2 * n;
  const auto* e = reinterpret_cast<const double*>(err);
  const auto* pa = reinterpret_cast<const double*>(a);
  const auto* pb = reinterpret_cast<const double*>(b);
  const __m256d sign = _mm256_set1_pd(-0.0);
  const __m256d vatol = _mm256_set1_pd(atol);
  const __m256d vrtol = _mm256_set1_pd(rtol);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    const __m256d aa = _mm256_andnot_pd(sign, _mm256_loadu_pd(pa + i));
    const __m256d bb = _mm256_andnot_pd(sign, _mm256_loadu_pd(pb + i));
    const __m256d sc = _mm256_fmadd_pd(vrtol, _mm256_max_pd(aa, bb), vatol);
    const __m256d q = _mm256_div_pd(_mm256_loadu_pd(e + i), sc);
    acc = _mm256_fmadd_pd(q, q, acc);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double sum = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < m; ++i) {
    const double sc = atol + rtol * std::max(std::abs(pa[i]), std::abs(pb[i]));
    const double q = e[i] / sc;
    sum += q * q;
  }
  return std::sqrt(sum / static_cast<double>(m));
}

}  // namespace qnet::kernels::avx2

#else

namespace qnet::kernels::avx2 {

[[noreturn]] static void unavailable() { throw std::runtime_error("AVX2 kernels were not compiled into this build"); }

void spmv(const CsrView&, const cplx*, cplx*) { unavailable(); }
void lincomb(std::size_t, const cplx*, std::span<const double>, std::span<const cplx* const>, cplx*) { unavailable(); }
double scaled_rms(std::size_t, const cplx*, const cplx*, const cplx*, double, double) { unavailable(); }

}  // namespace qnet::kernels::avx2

#endif
