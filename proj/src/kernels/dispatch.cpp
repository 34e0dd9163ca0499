// SPDX-License-Identifier: MIT
//
// Runtime ISA selection.  Resolved once per process: CPUID decides, the
// FRI_LAB_SIMD environment variable overrides (values: auto, scalar, avx2).
// Requesting avx2 on a machine without it falls back to scalar.

#include "fri/kernels/phasor.hpp"

#include <cstdlib>
#include <cstring>

namespace fri::kernels {

bool avx2_available() {
#if defined(FRI_LAB_HAVE_AVX2_TU) && defined(__GNUC__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

Isa resolve() {
  const char* env = std::getenv("FRI_LAB_SIMD");
  if (env != nullptr) {
    if (std::strcmp(env, "scalar") == 0) return Isa::scalar;
    if (std::strcmp(env, "avx2") == 0) return avx2_available() ? Isa::avx2 : Isa::scalar;
    // anything else (including "auto") falls through to autodetect
  }
  return avx2_available() ? Isa::avx2 : Isa::scalar;
}

const Isa g_isa = resolve();

}  // namespace

Isa active_isa() { return g_isa; }

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

void phasor_ramp(double theta0, double dtheta, std::size_t n, double* re, double* im) {
#if defined(FRI_LAB_HAVE_AVX2_TU)
  if (g_isa == Isa::avx2) {
    phasor_ramp_avx2(theta0, dtheta, n, re, im);
    return;
  }
#endif
  phasor_ramp_scalar(theta0, dtheta, n, re, im);
}

void cmul_accum(std::size_t n, std::complex<double> s,
                const double* a_re, const double* a_im,
                const double* b_re, const double* b_im,
                double* out_re, double* out_im) {
#if defined(FRI_LAB_HAVE_AVX2_TU)
  if (g_isa == Isa::avx2) {
    cmul_accum_avx2(n, s, a_re, a_im, b_re, b_im, out_re, out_im);
    return;
  }
#endif
  cmul_accum_scalar(n, s, a_re, a_im, b_re, b_im, out_re, out_im);
}

std::complex<double> dot_cplx(std::size_t n,
                              const double* a_re, const double* a_im,
                              const double* b_re, const double* b_im) {
#if defined(FRI_LAB_HAVE_AVX2_TU)
  if (g_isa == Isa::avx2) return dot_cplx_avx2(n, a_re, a_im, b_re, b_im);
#endif
  return dot_cplx_scalar(n, a_re, a_im, b_re, b_im);
}

}  // namespace fri::kernels
