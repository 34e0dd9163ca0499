// SPDX-License-Identifier: MIT
//
// Fisher information and Cramer-Rao bounds for the signal models.
//
// Continuous-time observation (white noise, intensity sigma_c):
//   J_cont = (1/sigma_c^2) Re(T D^H D)           (D = Fourier Jacobian)
//
// Sampled observation through N kernels with joint continuous/digital noise:
//   J_samp = W^T  (sigma_c^2 Gram_r + sigma_d^2 diag)^{-1}  W
// computed in the real channel basis (see sampling.hpp): W is the real
// matrix of channel/parameter sensitivities.  This realified form is exact
// for real-valued models on arbitrary (including one-sided) frequency sets;
// for conjugate-symmetric exponential schemes with sigma_d = 0 it reduces to
// the familiar (T/sigma_c^2) Re(D_F^H D_F), which is used as a fast path.
//
// The signal-domain CRB for unbiased estimation of x = h(theta) is
//   MSE >= Tr(M J^{-1}),  M = Re(T D^H D),
// which at full sampling support collapses to K sigma_c^2.

#pragma once

#include "fri/errors.hpp"
#include "fri/sampling.hpp"
#include "fri/signal_model.hpp"

#include <Eigen/Dense>

namespace fri {

class FisherMatrix {
public:
  enum class Provenance { continuous, sampled };

  static FisherMatrix make(Eigen::MatrixXd mat, Provenance prov, double sigma_c, double sigma_d);

  const Eigen::MatrixXd& mat() const { return mat_; }
  Provenance provenance() const { return provenance_; }
  double sigma_c() const { return sigma_c_; }
  double sigma_d() const { return sigma_d_; }
  int K() const { return static_cast<int>(mat_.rows()); }

  /// Eigen-decomposition cached at construction (ascending eigenvalues,
  /// clamped at zero within the PSD tolerance).
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  const Eigen::MatrixXd& eigenvectors() const { return eigenvectors_; }
  /// max/min eigenvalue ratio; +inf when the smallest eigenvalue is <= 0.
  double condition_number() const { return condition_number_; }

private:
  Eigen::MatrixXd mat_;
  Provenance provenance_ = Provenance::continuous;
  double sigma_c_ = 0.0, sigma_d_ = 0.0;
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd eigenvectors_;
  double condition_number_ = 0.0;
};

struct CrbValue {
  double mse_bound = 0.0;
  int K = 0;
  Eigen::VectorXd per_parameter;  // diagonal contributions, sums to mse_bound
  double condition_number = 0.0;  // of the Fisher matrix used
  bool ill_conditioned = false;   // condition_number > 1e12
};

/// M = Re(T D^H D): Gram of the model's sensitivity functions.
Eigen::MatrixXd m_matrix(const JacobianMatrix& D);

/// Continuous-observation FIM; sigma_c = 0 -> NoiseModelError.
FisherMatrix fim_continuous(const JacobianMatrix& D, double sigma_c);

/// Sampled-observation FIM under the scheme's kernels and the joint noise
/// model.  Requires a real-valued model (conjugate-symmetric Jacobian);
/// throws DegenerateSchemeError for linearly dependent kernels and
/// NoiseModelError at zero noise.
FisherMatrix fim_sampled(const JacobianMatrix& D, const SamplingScheme& scheme,
                         const NoiseSpec& noise);

/// Signal-MSE bound Tr(M J^{-1}) via the cached eigendecomposition.
/// Near-singular J (condition > 1e12) yields ill_conditioned = true; an
/// effectively singular J (min eigenvalue <= 1e-15 max) throws
/// UnidentifiableError carrying the null-space basis (eigenvectors below
/// the 1e-12 relative identifiability tolerance).
CrbValue crb_trace(const Eigen::MatrixXd& M, const FisherMatrix& J);

/// Diagnostic variant for deliberately near-degenerate configurations:
/// eigenvalues below 1e-15 relative are clipped up to that floor instead of
/// throwing, and the result is always flagged ill_conditioned.  Intended for
/// sweep experiments that probe the unidentifiable limit.
CrbValue crb_trace_clipped(const Eigen::MatrixXd& M, const FisherMatrix& J);

/// Full-measurement bound K sigma_c^2.
CrbValue crb_continuous(int K, double sigma_c);
/// Per-unit-time form (K/window) sigma_c^2 = rate_of_innovation * sigma_c^2.
double crb_continuous_normalized(int K, double sigma_c, double window);

/// CRB for a signal confined to a K-dimensional subspace with generator
/// Gram G_gram, sampled through kernels with Gram S_gram and cross Gram
/// S_cross(n, k) = <g_k, s_n>:
///   bound = sigma_c^2 Tr(G_gram (S_cross^H S_gram^{-1} S_cross)^{-1}).
CrbValue subspace_crb(const Eigen::MatrixXcd& G_gram, const Eigen::MatrixXcd& S_cross,
                      const Eigen::MatrixXcd& S_gram, double sigma_c);

struct IdentifiabilityReport {
  bool identifiable = false;
  int rank = 0;
  int K = 0;
  /// Orthonormal basis (columns) of the parameter directions invisible to
  /// the scheme; empty when identifiable.
  Eigen::MatrixXd null_basis;
};

/// Rank test of the sampled sensitivity map at relative tolerance 1e-12.
IdentifiabilityReport identifiability(const JacobianMatrix& D, const SamplingScheme& scheme);

}  // namespace fri
