// SPDX-License-Identifier: MIT
//
// Practical reconstruction algorithms benchmarked against the bounds:
//
//  * matrix_pencil -- time-delay estimation on a contiguous exponential band
//    (Hua & Sarkar, IEEE Trans. ASSP 38(5), 1990), followed by a Vandermonde
//    least-squares amplitude fit.
//  * subspace_consistent -- solves the square cross-Gram system; unbiased and
//    CRB-achieving when the kernel count equals the subspace dimension.
//  * bayes_linear_reconstruct -- per-coefficient shrinkage on a designed
//    kernel plan.

#pragma once

#include "fri/errors.hpp"
#include "fri/kernel_design.hpp"
#include "fri/pulse.hpp"
#include "fri/sampling.hpp"
#include "fri/signal_model.hpp"

#include <Eigen/Dense>

#include <json.hpp>

namespace fri {

struct PencilOptions {
  /// Frequencies with |h_k| below this fraction of the band maximum are
  /// spectral nulls: deconvolution would blow up, so the fit refuses.
  double eps_h_rel = 1e-8;
  /// Estimated delays closer than this fraction of T are merged (collapsed
  /// pulses), avoiding a singular Vandermonde solve.
  double merge_tol_rel = 1e-9;
};

struct EstimateReport {
  PulseStreamTheta theta_hat;
  FourierCoeffVector x_hat;
  /// Hankel singular values (descending); the L/L+1 gap diagnoses order.
  Eigen::VectorXd singular_values;
  /// Complex amplitude solutions before taking real parts.
  Eigen::VectorXcd amplitudes_complex;
  /// Number of delay-merge events (estimated pulses that collapsed).
  int merged_delays = 0;
  /// Vandermonde fit residual (band domain).
  double residual_norm = 0.0;

  nlohmann::json to_json() const;
};

/// Matrix-pencil estimation of L pulses from samples on a contiguous
/// frequency band.  Non-identity mixings are un-mixed first (requires the
/// mixing to have full column rank).  Throws ConfigError for non-contiguous
/// bands or N < 2L+1, SpectralNullError when deconvolution hits a vanishing
/// pulse coefficient.
EstimateReport matrix_pencil(const Eigen::VectorXcd& c, const SamplingScheme& scheme,
                             const FourierPulse& pulse, int L, const PencilOptions& opts = {});

/// Consistent subspace estimator: solves S_cross theta_hat = c (requires
/// N = K and an invertible cross Gram; UnidentifiableError otherwise).
/// G_gram is validated for dimension consistency.
Eigen::VectorXcd subspace_consistent(const Eigen::VectorXcd& c, const Eigen::MatrixXcd& G_gram,
                                     const Eigen::MatrixXcd& S_cross);

/// Exact MSE of subspace_consistent under continuous noise sigma_c:
///   sigma_c^2 Tr(G_gram S_cross^{-1} S_gram S_cross^{-H}).
/// Equals the subspace CRB when N = K.
double subspace_consistent_mse(const Eigen::MatrixXcd& G_gram, const Eigen::MatrixXcd& S_cross,
                               const Eigen::MatrixXcd& S_gram, double sigma_c);

/// Shrinkage reconstruction on a kernel plan: x_{p_n} = alpha_n c_n / T.
/// Pass shrunk = false to apply the plain projection (alpha = 1) instead.
FourierCoeffVector bayes_linear_reconstruct(const Eigen::VectorXcd& c,
                                            const KernelBudgetPlan& plan, bool shrunk = true);

}  // namespace fri
