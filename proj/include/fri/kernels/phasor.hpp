// SPDX-License-Identifier: MIT
//
// Hot inner-loop kernels shared by signal synthesis, time-domain evaluation
// and Jacobian assembly.  Arrays are split (re[], im[]) because that layout
// vectorizes cleanly.  Each kernel has a scalar reference implementation and
// an AVX2 variant; the dispatched entry points pick one at runtime from
// CPUID, overridable with the environment variable
//
//   FRI_LAB_SIMD = auto | scalar | avx2      (default: auto)
//
// The variants agree to ~1e-13 relative accuracy (the AVX2 phasor ramp uses
// a rotation recurrence that is reseeded with libm sincos every block to
// keep rounding error from accumulating); equivalence is enforced by tests.

#pragma once

#include <complex>
#include <cstddef>

namespace fri::kernels {

enum class Isa { scalar, avx2 };

/// ISA selected by the dispatcher for this process (env override applied).
Isa active_isa();
const char* isa_name(Isa isa);
/// True when the AVX2 translation unit was compiled in AND the CPU supports it.
bool avx2_available();

// ---- dispatched entry points ------------------------------------------------

/// out[i] = exp(j * (theta0 + i * dtheta)),  i = 0..n-1.
void phasor_ramp(double theta0, double dtheta, std::size_t n, double* re, double* im);

/// out[i] += s * a[i] * b[i]   (complex elementwise product, complex scale).
void cmul_accum(std::size_t n, std::complex<double> s,
                const double* a_re, const double* a_im,
                const double* b_re, const double* b_im,
                double* out_re, double* out_im);

/// Sum_i a[i] * b[i]  (no conjugation).
std::complex<double> dot_cplx(std::size_t n,
                              const double* a_re, const double* a_im,
                              const double* b_re, const double* b_im);

// ---- named variants (exposed for equivalence testing) -----------------------

void phasor_ramp_scalar(double theta0, double dtheta, std::size_t n, double* re, double* im);
void cmul_accum_scalar(std::size_t n, std::complex<double> s,
                       const double* a_re, const double* a_im,
                       const double* b_re, const double* b_im,
                       double* out_re, double* out_im);
std::complex<double> dot_cplx_scalar(std::size_t n,
                                     const double* a_re, const double* a_im,
                                     const double* b_re, const double* b_im);

// Defined only when the AVX2 TU is compiled; guard calls with avx2_available().
void phasor_ramp_avx2(double theta0, double dtheta, std::size_t n, double* re, double* im);
void cmul_accum_avx2(std::size_t n, std::complex<double> s,
                     const double* a_re, const double* a_im,
                     const double* b_re, const double* b_im,
                     double* out_re, double* out_im);
std::complex<double> dot_cplx_avx2(std::size_t n,
                                   const double* a_re, const double* a_im,
                                   const double* b_re, const double* b_im);

}  // namespace fri::kernels
