// AVX2 + FMA variants. Compiled only for x86-64 with -mavx2 -mfma; callers
// reach these through the runtime dispatch in kernels.cpp.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "pdmorse/kernels.hpp"

namespace pdm::kernels::detail {

namespace {

inline __m256d abs_pd(__m256d v) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

inline double hmax(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
}

}  // namespace

void jacobi_batch_avx2(const JacobiRecurrence& rec, const double* x,
                       double* out, std::size_t count) {
  if (rec.n == 0) {
    std::fill(out, out + count, 1.0);
    return;
  }
  const __m256d half_sum = _mm256_set1_pd(0.5 * (rec.p + rec.q + 2.0));
  const __m256d half_diff = _mm256_set1_pd(0.5 * (rec.p - rec.q));
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    __m256d prev = _mm256_set1_pd(1.0);
    __m256d cur = _mm256_fmadd_pd(half_sum, xv, half_diff);
    for (int k = 0; k + 1 < rec.n; ++k) {
      const __m256d slope = _mm256_fmadd_pd(_mm256_set1_pd(rec.cx[k]), xv,
                                            _mm256_set1_pd(rec.c0[k]));
      const __m256d next = _mm256_fnmadd_pd(_mm256_set1_pd(rec.cm[k]), prev,
                                            _mm256_mul_pd(slope, cur));
      prev = cur;
      cur = next;
    }
    _mm256_storeu_pd(out + i, cur);
  }
  if (i < count) jacobi_batch_scalar(rec, x + i, out + i, count - i);
}

ResidualTerms fd_residual_avx2(const double* z, const double* phi,
                               std::size_t count, double h,
                               const ResidualCoeffs& c) {
  ResidualTerms r;
  if (count < 5) return r;
  const __m256d inv12h = _mm256_set1_pd(1.0 / (12.0 * h));
  const __m256d inv12h2 = _mm256_set1_pd(1.0 / (12.0 * h * h));
  const __m256d eight = _mm256_set1_pd(8.0);
  const __m256d sixteen = _mm256_set1_pd(16.0);
  const __m256d thirty = _mm256_set1_pd(30.0);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d eta = _mm256_set1_pd(c.eta);
  const __m256d neps1 = _mm256_set1_pd(-c.eps1);
  const __m256d neps2 = _mm256_set1_pd(-c.eps2);
  const __m256d neps = _mm256_set1_pd(-c.eps);
  __m256d max_lhs = _mm256_setzero_pd();
  __m256d max_term = _mm256_setzero_pd();

  std::size_t i = 2;
  for (; i + 2 + 4 <= count; i += 4) {
    const __m256d pm2 = _mm256_loadu_pd(phi + i - 2);
    const __m256d pm1 = _mm256_loadu_pd(phi + i - 1);
    const __m256d p0 = _mm256_loadu_pd(phi + i);
    const __m256d pp1 = _mm256_loadu_pd(phi + i + 1);
    const __m256d pp2 = _mm256_loadu_pd(phi + i + 2);
    const __m256d zi = _mm256_loadu_pd(z + i);

    const __m256d outer = _mm256_sub_pd(pm2, pp2);
    const __m256d d1 = _mm256_mul_pd(
        _mm256_fmadd_pd(eight, _mm256_sub_pd(pp1, pm1), outer), inv12h);
    __m256d d2 = _mm256_fmadd_pd(sixteen, _mm256_add_pd(pp1, pm1),
                                 _mm256_sub_pd(_mm256_setzero_pd(), _mm256_add_pd(pp2, pm2)));
    d2 = _mm256_mul_pd(_mm256_fnmadd_pd(thirty, p0, d2), inv12h2);

    const __m256d sig = _mm256_mul_pd(zi, _mm256_fnmadd_pd(eta, zi, one));
    const __m256d poly = _mm256_fmadd_pd(_mm256_fmadd_pd(neps1, zi, neps2), zi, neps);
    const __m256d t1 = d2;
    const __m256d t2 = _mm256_div_pd(d1, zi);
    const __m256d t3 = _mm256_mul_pd(_mm256_div_pd(poly, _mm256_mul_pd(sig, sig)), p0);
    const __m256d lhs = _mm256_add_pd(_mm256_add_pd(t1, t2), t3);

    max_lhs = _mm256_max_pd(max_lhs, abs_pd(lhs));
    max_term = _mm256_max_pd(max_term, abs_pd(t1));
    max_term = _mm256_max_pd(max_term, abs_pd(t2));
    max_term = _mm256_max_pd(max_term, abs_pd(t3));
  }
  r.max_lhs = hmax(max_lhs);
  r.max_term = hmax(max_term);
  if (i + 2 < count) {
    // tail: rerun the reference on a window that keeps the two-point halo
    const ResidualTerms tail = fd_residual_scalar(z + i - 2, phi + i - 2, count - i + 2, h, c);
    r.max_lhs = std::max(r.max_lhs, tail.max_lhs);
    r.max_term = std::max(r.max_term, tail.max_term);
  }
  return r;
}

void numerov_coeffs_avx2(const double* g, const double* w, double E, double h,
                         double* lhs, double* mid, std::size_t count) {
  const double h2s = h * h / 12.0;
  const __m256d h2 = _mm256_set1_pd(h2s);
  const __m256d five_h2 = _mm256_set1_pd(5.0 * h2s);
  const __m256d ev = _mm256_set1_pd(E);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256d f = _mm256_fnmadd_pd(ev, _mm256_loadu_pd(w + i), _mm256_loadu_pd(g + i));
    _mm256_storeu_pd(lhs + i, _mm256_fnmadd_pd(h2, f, one));
    _mm256_storeu_pd(mid + i, _mm256_mul_pd(two, _mm256_fmadd_pd(five_h2, f, one)));
  }
  if (i < count) numerov_coeffs_scalar(g + i, w + i, E, h, lhs + i, mid + i, count - i);
}

}  // namespace pdm::kernels::detail
