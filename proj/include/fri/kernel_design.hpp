// SPDX-License-Identifier: MIT
//
// MSE-optimal sampling kernel design under a stochastic signal prior.
//
// For the periodic stream prior (delays i.i.d. uniform on [0,T), amplitudes
// zero-mean uncorrelated with variance sigma_a^2) the signal autocorrelation
// is diagonalized by the Fourier exponentials with eigenvalues
//   lambda_k = L sigma_a^2 T |h_k|^2.
// The best N linear measurements pick the N largest-eigenvalue exponentials,
// and the optimal linear reconstruction shrinks each coefficient by
// lambda/(lambda + sigma_c^2); the resulting MSE has the closed form
//   sum_k lambda_k - sum_{chosen} lambda^2/(lambda + sigma_c^2).
// A brute-force objective over arbitrary orthonormal measurement matrices
// serves as the optimality oracle, and klt_subspace generalizes the
// eigen-analysis to arbitrary generator sets via their Gram matrix.

#pragma once

#include "fri/errors.hpp"
#include "fri/pulse.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

#include <json.hpp>

namespace fri {

/// Prior eigen-spectrum attached to Fourier indices, sorted descending
/// (ties: smaller |index| first, then positive before negative).
struct SpectrumDesign {
  double period = 1.0;
  int L = 1;
  double sigma_a = 1.0;
  std::vector<long> indices;
  Eigen::VectorXd eigenvalues;

  double total_energy() const { return eigenvalues.sum(); }
};

/// Budgeted kernel selection with shrinkage weights.  The plan's kernels are
/// unit exponentials exp(j 2 pi p t / T) at the chosen indices, so a sample
/// is c_n = T x_{p_n} + noise.
struct KernelBudgetPlan {
  double period = 1.0;
  int budget = 0;
  double sigma_c = 0.0;
  std::vector<long> indices;
  Eigen::VectorXd eigenvalues;  // aligned with indices
  Eigen::VectorXd shrinkage;    // lambda/(lambda + sigma_c^2)
  bool saturated = false;       // budget exceeded the nonzero spectrum
  std::string tie_break_note;

  int size() const { return static_cast<int>(indices.size()); }
  nlohmann::json to_json() const;
  static KernelBudgetPlan from_json(const nlohmann::json& j);
};

/// lambda_k = L sigma_a^2 T |h_k|^2 over the pulse support.
SpectrumDesign periodic_spectrum(const FourierPulse& pulse, int L, double sigma_a);

/// Picks the N largest-eigenvalue indices with deterministic tie-breaking
/// and computes shrinkage weights.  Zero-eigenvalue indices are never
/// selected; when fewer than N positive eigenvalues exist the plan is
/// truncated and flagged saturated.
KernelBudgetPlan top_n_kernels(const SpectrumDesign& spec, int N, double sigma_c);

/// Closed-form MSE of the shrinkage estimator on the top-N plan.
double bayes_linear_mse(const SpectrumDesign& spec, int N, double sigma_c);

/// MSE of the plain (unshrunk) projection onto the same N kernels:
/// truncation energy plus N sigma_c^2 of passed-through noise.
double truncated_projection_mse(const SpectrumDesign& spec, int N, double sigma_c);

/// Generalized eigen-analysis for a K-dimensional generator family with
/// Gram G_gram and parameter covariance R_theta:
///   U D U^H = G^{1/2} R_theta G^{1/2},
/// returned as coordinates Psi = G^{-1/2} U of the orthonormal eigenfunctions
/// in the generator basis, eigenvalues descending.
struct KltBasis {
  Eigen::MatrixXcd coords;     // K x K, columns are eigenfunction coordinates
  Eigen::VectorXd eigenvalues; // descending, >= 0
};
KltBasis klt_subspace(const Eigen::MatrixXcd& G_gram, const Eigen::MatrixXcd& R_theta);

/// Design objective sum_{n,k} |A_{nk}|^2 lambda_k^2/(lambda_k + sigma_c^2)
/// for an arbitrary measurement matrix with orthonormal rows (checked to
/// 1e-10; ConstraintViolationError otherwise).  The top-N eigen choice
/// attains the maximum sum_{top N} lambda^2/(lambda + sigma_c^2).
double brute_force_design_objective(const Eigen::MatrixXcd& A, const Eigen::VectorXd& lambdas,
                                    double sigma_c);

}  // namespace fri
