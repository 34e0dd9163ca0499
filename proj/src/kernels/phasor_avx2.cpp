// SPDX-License-Identifier: MIT
//
// AVX2+FMA variants of the hot kernels.  This is the only translation unit
// compiled with -mavx2; it is empty when the toolchain lacks the flag, and
// the dispatcher never routes here unless CPUID reports AVX2.

#include "fri/kernels/phasor.hpp"

#if defined(FRI_LAB_HAVE_AVX2_TU)

#include <immintrin.h>

#include <cmath>

namespace fri::kernels {

namespace {
// Iterations of the rotation recurrence between exact libm reseeds.  Each
// complex rotation adds a couple of ulps of error; 64 steps keeps the drift
// around 1e-14 relative, well inside the tested 1e-12 envelope.
constexpr std::size_t kReseedBlock = 64;

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}
}  // namespace

void phasor_ramp_avx2(double theta0, double dtheta, std::size_t n, double* re, double* im) {
  std::size_t i = 0;
  if (n >= 4) {
    // Step multiplier advances all four lanes by 4*dtheta.
    const double c4 = std::cos(4.0 * dtheta);
    const double s4 = std::sin(4.0 * dtheta);
    const __m256d C = _mm256_set1_pd(c4);
    const __m256d S = _mm256_set1_pd(s4);
    __m256d cr = _mm256_setzero_pd(), ci = _mm256_setzero_pd();
    std::size_t since_seed = kReseedBlock;  // force a seed on entry
    for (; i + 4 <= n; i += 4) {
      if (since_seed >= kReseedBlock) {
        alignas(32) double cs[4], ss[4];
        for (int k = 0; k < 4; ++k) {
          const double th = theta0 + static_cast<double>(i + k) * dtheta;
          cs[k] = std::cos(th);
          ss[k] = std::sin(th);
        }
        cr = _mm256_load_pd(cs);
        ci = _mm256_load_pd(ss);
        since_seed = 0;
      }
      _mm256_storeu_pd(re + i, cr);
      _mm256_storeu_pd(im + i, ci);
      // (cr + j ci) *= (C + j S)
      const __m256d nr = _mm256_fmsub_pd(cr, C, _mm256_mul_pd(ci, S));
      const __m256d ni = _mm256_fmadd_pd(cr, S, _mm256_mul_pd(ci, C));
      cr = nr;
      ci = ni;
      ++since_seed;
    }
  }
  for (; i < n; ++i) {
    const double th = theta0 + static_cast<double>(i) * dtheta;
    re[i] = std::cos(th);
    im[i] = std::sin(th);
  }
}

void cmul_accum_avx2(std::size_t n, std::complex<double> s,
                     const double* a_re, const double* a_im,
                     const double* b_re, const double* b_im,
                     double* out_re, double* out_im) {
  const __m256d sr = _mm256_set1_pd(s.real());
  const __m256d si = _mm256_set1_pd(s.imag());
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d ar = _mm256_loadu_pd(a_re + i);
    const __m256d ai = _mm256_loadu_pd(a_im + i);
    const __m256d br = _mm256_loadu_pd(b_re + i);
    const __m256d bi = _mm256_loadu_pd(b_im + i);
    const __m256d pr = _mm256_fmsub_pd(ar, br, _mm256_mul_pd(ai, bi));
    const __m256d pi = _mm256_fmadd_pd(ar, bi, _mm256_mul_pd(ai, br));
    __m256d or_ = _mm256_loadu_pd(out_re + i);
    __m256d oi_ = _mm256_loadu_pd(out_im + i);
    or_ = _mm256_add_pd(or_, _mm256_fmsub_pd(sr, pr, _mm256_mul_pd(si, pi)));
    oi_ = _mm256_add_pd(oi_, _mm256_fmadd_pd(sr, pi, _mm256_mul_pd(si, pr)));
    _mm256_storeu_pd(out_re + i, or_);
    _mm256_storeu_pd(out_im + i, oi_);
  }
  for (; i < n; ++i) {
    const double pr = a_re[i] * b_re[i] - a_im[i] * b_im[i];
    const double pi = a_re[i] * b_im[i] + a_im[i] * b_re[i];
    out_re[i] += s.real() * pr - s.imag() * pi;
    out_im[i] += s.real() * pi + s.imag() * pr;
  }
}

std::complex<double> dot_cplx_avx2(std::size_t n,
                                   const double* a_re, const double* a_im,
                                   const double* b_re, const double* b_im) {
  __m256d accr = _mm256_setzero_pd();
  __m256d acci = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d ar = _mm256_loadu_pd(a_re + i);
    const __m256d ai = _mm256_loadu_pd(a_im + i);
    const __m256d br = _mm256_loadu_pd(b_re + i);
    const __m256d bi = _mm256_loadu_pd(b_im + i);
    accr = _mm256_add_pd(accr, _mm256_fmsub_pd(ar, br, _mm256_mul_pd(ai, bi)));
    acci = _mm256_add_pd(acci, _mm256_fmadd_pd(ar, bi, _mm256_mul_pd(ai, br)));
  }
  double r = hsum(accr), m = hsum(acci);
  for (; i < n; ++i) {
    r += a_re[i] * b_re[i] - a_im[i] * b_im[i];
    m += a_re[i] * b_im[i] + a_im[i] * b_re[i];
  }
  return {r, m};
}

}  // namespace fri::kernels

#endif  // FRI_LAB_HAVE_AVX2_TU
