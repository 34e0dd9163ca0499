// SPDX-License-Identifier: MIT
//
// Scalar reference kernels.  These define the semantics; the SIMD variants
// must match them to tight tolerance (see tests/test_kernels.cpp).

#include "fri/kernels/phasor.hpp"

#include <cmath>

namespace fri::kernels {

void phasor_ramp_scalar(double theta0, double dtheta, std::size_t n, double* re, double* im) {
  for (std::size_t i = 0; i < n; ++i) {
    // One libm sincos per element: the accuracy reference.
    const double th = theta0 + static_cast<double>(i) * dtheta;
    re[i] = std::cos(th);
    im[i] = std::sin(th);
  }
}

void cmul_accum_scalar(std::size_t n, std::complex<double> s,
                       const double* a_re, const double* a_im,
                       const double* b_re, const double* b_im,
                       double* out_re, double* out_im) {
  const double sr = s.real(), si = s.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double pr = a_re[i] * b_re[i] - a_im[i] * b_im[i];
    const double pi = a_re[i] * b_im[i] + a_im[i] * b_re[i];
    out_re[i] += sr * pr - si * pi;
    out_im[i] += sr * pi + si * pr;
  }
}

std::complex<double> dot_cplx_scalar(std::size_t n,
                                     const double* a_re, const double* a_im,
                                     const double* b_re, const double* b_im) {
  double acc_r = 0.0, acc_i = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc_r += a_re[i] * b_re[i] - a_im[i] * b_im[i];
    acc_i += a_re[i] * b_im[i] + a_im[i] * b_re[i];
  }
  return {acc_r, acc_i};
}

}  // namespace fri::kernels
